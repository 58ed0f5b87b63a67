#include "stokeseg/mobility.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "stokeseg/point_kernels.hpp"

namespace stokeseg {

namespace {

constexpr TnqIndex block_need[] = {{0, -1}, {1, -1}, {0, -3}, {1, -3}, {2, -3}, {3, -3}};

Eigen::Vector3d to_eigen(const Vec3 &v) { return Eigen::Vector3d(v.x, v.y, v.z); }

/// 3x3 blocks (A, B) with u = A f_a + B f_b for the linear density
/// f(alpha) = f_a + alpha f_b on one segment, prefactors included.
void segment_blocks(const Vec3 &xhat, const Segment &seg, double eps, double mu,
                    Eigen::Matrix3d &A, Eigen::Matrix3d &B) {
    const SegmentGeometry g(xhat, seg, eps);
    const TnqTable T = build_table(g, block_need);
    const double e2 = eps * eps;
    const double t01 = T.at(0, -1) + e2 * T.at(0, -3);
    const double t11 = T.at(1, -1) + e2 * T.at(1, -3);
    const Eigen::Vector3d x0 = to_eigen(g.x0);
    const Eigen::Vector3d v = to_eigen(g.v);
    const Eigen::Matrix3d xx = x0 * x0.transpose();
    const Eigen::Matrix3d xv = x0 * v.transpose() + v * x0.transpose();
    const Eigen::Matrix3d vv = v * v.transpose();
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    const double c = g.L / (eight_pi * mu);
    A = c * (t01 * id + T.at(0, -3) * xx + T.at(1, -3) * xv + T.at(2, -3) * vv);
    B = c * (t11 * id + T.at(1, -3) * xx + T.at(2, -3) * xv + T.at(3, -3) * vv);
}

Eigen::Matrix3d point_stokeslet_block(const Vec3 &xhat, const Vec3 &node, double eps, double mu) {
    const Vec3 x = xhat - node;
    const double R2 = dot(x, x) + eps * eps;
    const double R = std::sqrt(R2);
    const double R3 = R * R2;
    const Eigen::Vector3d xe = to_eigen(x);
    Eigen::Matrix3d S = (1.0 / R + eps * eps / R3) * Eigen::Matrix3d::Identity();
    S += (xe * xe.transpose()) / R3;
    return S / (eight_pi * mu);
}

} // namespace

FilamentMesh::FilamentMesh(std::vector<Vec3> pts) : nodes(std::move(pts)) {
    if (nodes.size() < 2) throw std::invalid_argument("FilamentMesh: need at least two nodes");
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
        if (!(norm2(nodes[k] - nodes[k + 1]) > 0.0))
            throw std::invalid_argument("FilamentMesh: consecutive nodes must be distinct");
}

double FilamentMesh::segment_length(std::size_t k) const { return norm(nodes[k] - nodes[k + 1]); }

double FilamentMesh::total_length() const {
    double s = 0.0;
    for (std::size_t k = 0; k < segment_count(); ++k) s += segment_length(k);
    return s;
}

std::vector<double> FilamentMesh::node_weights() const {
    std::vector<double> w(node_count(), 0.0);
    for (std::size_t k = 0; k < segment_count(); ++k) {
        const double half = 0.5 * segment_length(k);
        w[k] += half;
        w[k + 1] += half;
    }
    return w;
}

std::vector<Vec3> FilamentMesh::arclength_points(std::size_t n) const {
    if (n < 2) throw std::invalid_argument("arclength_points: need at least two points");
    std::vector<double> cum(node_count(), 0.0);
    for (std::size_t k = 0; k < segment_count(); ++k) cum[k + 1] = cum[k] + segment_length(k);
    const double total = cum.back();
    std::vector<Vec3> pts;
    pts.reserve(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = total * static_cast<double>(i) / static_cast<double>(n - 1);
        while (k + 1 < segment_count() && cum[k + 1] < s) ++k;
        const double t = (s - cum[k]) / (cum[k + 1] - cum[k]);
        pts.push_back(nodes[k] + std::clamp(t, 0.0, 1.0) * (nodes[k + 1] - nodes[k]));
    }
    return pts;
}

MobilityMatrix assemble(const FilamentMesh &mesh, std::span<const Vec3> eval_points, double eps,
                        double mu, Method method) {
    const auto n_eval = static_cast<Eigen::Index>(eval_points.size());
    const auto n_nodes = static_cast<Eigen::Index>(mesh.node_count());
    MobilityMatrix M;
    M.m = Eigen::MatrixXd::Zero(3 * n_eval, 3 * n_nodes);

    if (method == Method::segments) {
        for (std::size_t k = 0; k < mesh.segment_count(); ++k) {
            const Segment seg = mesh.segment(k);
            const auto kk = static_cast<Eigen::Index>(k);
            for (Eigen::Index i = 0; i < n_eval; ++i) {
                Eigen::Matrix3d A, B;
                segment_blocks(eval_points[static_cast<std::size_t>(i)], seg, eps, mu, A, B);
                M.m.block<3, 3>(3 * i, 3 * kk) += A - B;
                M.m.block<3, 3>(3 * i, 3 * (kk + 1)) += B;
            }
        }
        return M;
    }

    const std::vector<double> w = mesh.node_weights();
    for (Eigen::Index j = 0; j < n_nodes; ++j) {
        for (Eigen::Index i = 0; i < n_eval; ++i) {
            M.m.block<3, 3>(3 * i, 3 * j) =
                w[static_cast<std::size_t>(j)] *
                point_stokeslet_block(eval_points[static_cast<std::size_t>(i)],
                                      mesh.nodes[static_cast<std::size_t>(j)], eps, mu);
        }
    }
    return M;
}

std::vector<Vec3> solve_forces(const FilamentMesh &mesh, std::span<const Vec3> node_velocities,
                               double eps, double mu, Method method, SolveReport *report) {
    const std::size_t n = mesh.node_count();
    if (node_velocities.size() != n)
        throw std::invalid_argument("solve_forces: one prescribed velocity per node required");

    MobilityMatrix M = assemble(mesh, std::span<const Vec3>(mesh.nodes), eps, mu, method);
    Eigen::VectorXd b(3 * static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        b[3 * static_cast<Eigen::Index>(i) + 0] = node_velocities[i].x;
        b[3 * static_cast<Eigen::Index>(i) + 1] = node_velocities[i].y;
        b[3 * static_cast<Eigen::Index>(i) + 2] = node_velocities[i].z;
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M.m);
    const double rcond = lu.rcond();
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!std::isfinite(cond) || cond > 1e14)
        throw IllConditionedError("solve_forces: collocation system is numerically singular", cond);

    Eigen::VectorXd x = lu.solve(b);
    const double bnorm = b.norm();
    double rel = bnorm > 0.0 ? (b - M.m * x).norm() / bnorm : 0.0;
    int rounds = 0;
    while (rel > 1e-12 && rounds < 3) {
        x += lu.solve(b - M.m * x);
        rel = (b - M.m * x).norm() / bnorm;
        ++rounds;
    }
    if (!x.allFinite() || rel > 1e-10)
        throw IllConditionedError("solve_forces: refinement could not reach the residual target",
                                  cond);

    if (report != nullptr) {
        report->condition_estimate = cond;
        report->relative_residual = rel;
        report->refinement_rounds = rounds;
        report->conditioning_warning = cond > 1e10;
    }

    std::vector<Vec3> f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = Vec3{x[3 * static_cast<Eigen::Index>(i) + 0], x[3 * static_cast<Eigen::Index>(i) + 1],
                    x[3 * static_cast<Eigen::Index>(i) + 2]};
    return f;
}

std::vector<Vec3> mrs_baseline_velocity(std::span<const Vec3> points, std::span<const Vec3> forces,
                                        std::span<const Vec3> eval_points, double eps, double mu) {
    if (points.size() != forces.size())
        throw std::invalid_argument("mrs_baseline_velocity: one force per point required");
    std::vector<Vec3> out(eval_points.size());
    for (std::size_t i = 0; i < eval_points.size(); ++i) {
        Vec3 u{};
        for (std::size_t j = 0; j < points.size(); ++j)
            u += point_stokeslet(eval_points[i], points[j], forces[j], eps, mu);
        out[i] = u;
    }
    return out;
}

double leak(const FilamentMesh &mesh, std::span<const Vec3> densities, const Vec3 &U, double eps,
            double mu, std::size_t check_points, Method method) {
    if (densities.size() != mesh.node_count())
        throw std::invalid_argument("leak: one density per node required");
    const std::vector<Vec3> pts = mesh.arclength_points(check_points);
    const std::vector<double> w = mesh.node_weights();

    // Accumulate per-point errors into a fixed slot each, then reduce
    // serially: the result does not depend on the thread count.
    std::vector<double> e2(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ip = 0; ip < static_cast<std::ptrdiff_t>(pts.size()); ++ip) {
        const auto i = static_cast<std::size_t>(ip);
        Vec3 u{};
        if (method == Method::segments) {
            for (std::size_t k = 0; k < mesh.segment_count(); ++k) {
                const SegmentLoad load =
                    SegmentLoad::from_endpoints(LoadKind::force, densities[k], densities[k + 1]);
                u += stokeslet_segment(pts[i], mesh.segment(k), load, eps, mu);
            }
        } else {
            for (std::size_t j = 0; j < mesh.node_count(); ++j)
                u += point_stokeslet(pts[i], mesh.nodes[j], w[j] * densities[j], eps, mu);
        }
        e2[i] = norm2(u - U);
    }
    double sum = 0.0;
    for (double v : e2) sum += v;
    return std::sqrt(sum / static_cast<double>(pts.size()));
}

Vec3 drag(const FilamentMesh &mesh, std::span<const Vec3> densities, Method method) {
    if (densities.size() != mesh.node_count())
        throw std::invalid_argument("drag: one density per node required");
    Vec3 F{};
    if (method == Method::segments) {
        for (std::size_t k = 0; k < mesh.segment_count(); ++k)
            F += 0.5 * mesh.segment_length(k) * (densities[k] + densities[k + 1]);
        return F;
    }
    const std::vector<double> w = mesh.node_weights();
    for (std::size_t j = 0; j < mesh.node_count(); ++j) F += w[j] * densities[j];
    return F;
}

} // namespace stokeseg
