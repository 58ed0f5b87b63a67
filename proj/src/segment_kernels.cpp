#include "stokeseg/segment_kernels.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace stokeseg {

namespace {

void require_kind(const SegmentLoad &load, LoadKind kind, const char *op) {
    if (load.kind != kind) throw std::invalid_argument(std::string(op) + ": unexpected load kind");
}

constexpr TnqIndex stokeslet_need[] = {{0, -1}, {1, -1}, {0, -3}, {1, -3}, {2, -3}, {3, -3}};
constexpr TnqIndex rotlet_need[] = {{0, -3}, {1, -3}, {2, -3}, {0, -5}, {1, -5}, {2, -5}};
constexpr TnqIndex dipole_std_need[] = {{0, -3}, {1, -3}, {0, -5}, {1, -5}, {2, -5}, {3, -5}};
constexpr TnqIndex dipole_kir_need[] = {{0, -3}, {1, -3}, {0, -5}, {1, -5}, {2, -5}, {3, -5},
                                        {0, -7}, {1, -7}, {2, -7}, {3, -7}};
constexpr TnqIndex pressure_force_need[] = {{0, -5}, {1, -5}, {2, -5}, {0, -7}, {1, -7}, {2, -7}};
constexpr TnqIndex pressure_dipole_need[] = {{0, -9}, {1, -9}, {2, -9}};
constexpr TnqIndex image_need[] = {{0, -1}, {1, -1}, {0, -3}, {1, -3}, {2, -3}, {3, -3},
                                   {0, -5}, {1, -5}, {2, -5}, {3, -5}, {4, -5}, {5, -5}};
constexpr TnqIndex rod_need[] = {{0, -1}, {1, -1}, {0, -3}, {1, -3}, {2, -3}, {3, -3},
                                 {0, -5}, {1, -5}, {2, -5}, {3, -5}, {0, -7}, {1, -7},
                                 {2, -7}, {3, -7}};

/// Accumulators below return (8 pi mu / L) u; callers apply the common scale.
/// The coefficient vectors f_n arise from expanding (f_a + alpha f_b) against
/// x(alpha) = x0 + alpha v inside the kernel numerators.

Vec3 stokeslet_sum(const TnqTable &T, const SegmentGeometry &g, const Vec3 &fa, const Vec3 &fb) {
    const double e2 = g.eps * g.eps;
    const Vec3 &x0 = g.x0;
    const Vec3 &v = g.v;
    Vec3 u = (T.at(0, -1) + e2 * T.at(0, -3)) * fa + (T.at(1, -1) + e2 * T.at(1, -3)) * fb;
    const Vec3 f0 = dot(fa, x0) * x0;
    const Vec3 f1 = dot(fa, v) * x0 + dot(fa, x0) * v + dot(fb, x0) * x0;
    const Vec3 f2 = (dot(fa, v) + dot(fb, x0)) * v + dot(fb, v) * x0;
    const Vec3 f3 = dot(fb, v) * v;
    u += T.at(0, -3) * f0 + T.at(1, -3) * f1 + T.at(2, -3) * f2 + T.at(3, -3) * f3;
    return u;
}

Vec3 rotlet_sum(const TnqTable &T, const SegmentGeometry &g, const Vec3 &ta, const Vec3 &tb) {
    const double e2 = g.eps * g.eps;
    const Vec3 t0 = cross(ta, g.x0);
    const Vec3 t1 = cross(tb, g.x0) + cross(ta, g.v);
    const Vec3 t2 = cross(tb, g.v);
    return (2.0 * T.at(0, -3) + 3.0 * e2 * T.at(0, -5)) * t0 +
           (2.0 * T.at(1, -3) + 3.0 * e2 * T.at(1, -5)) * t1 +
           (2.0 * T.at(2, -3) + 3.0 * e2 * T.at(2, -5)) * t2;
}

Vec3 dipole_sum(const TnqTable &T, const SegmentGeometry &g, const Vec3 &ga, const Vec3 &gb,
                DipoleVariant variant) {
    const double e2 = g.eps * g.eps;
    const Vec3 &x0 = g.x0;
    const Vec3 &v = g.v;
    const Vec3 g0 = dot(ga, x0) * x0;
    const Vec3 g1 = dot(ga, v) * x0 + dot(ga, x0) * v + dot(gb, x0) * x0;
    const Vec3 g2 = (dot(ga, v) + dot(gb, x0)) * v + dot(gb, v) * x0;
    const Vec3 g3 = dot(gb, v) * v;
    if (variant == DipoleVariant::standard) {
        Vec3 u = -(2.0 * T.at(0, -3) - 6.0 * e2 * T.at(0, -5)) * ga -
                 (2.0 * T.at(1, -3) - 6.0 * e2 * T.at(1, -5)) * gb;
        u += 6.0 * (T.at(0, -5) * g0 + T.at(1, -5) * g1 + T.at(2, -5) * g2 + T.at(3, -5) * g3);
        return u;
    }
    const double e4 = e2 * e2;
    Vec3 u = -(2.0 * T.at(0, -3) + 3.0 * e2 * T.at(0, -5) - 15.0 * e4 * T.at(0, -7)) * ga -
             (2.0 * T.at(1, -3) + 3.0 * e2 * T.at(1, -5) - 15.0 * e4 * T.at(1, -7)) * gb;
    u += (6.0 * T.at(0, -5) + 15.0 * e2 * T.at(0, -7)) * g0 +
         (6.0 * T.at(1, -5) + 15.0 * e2 * T.at(1, -7)) * g1 +
         (6.0 * T.at(2, -5) + 15.0 * e2 * T.at(2, -7)) * g2 +
         (6.0 * T.at(3, -5) + 15.0 * e2 * T.at(3, -7)) * g3;
    return u;
}

/// Polynomial in alpha, ascending coefficients, degree at most 5. All image
/// integrand products stay within degree 5, so truncation never occurs.
using Poly6 = std::array<double, 6>;

Poly6 lin(double c0, double c1) { return Poly6{c0, c1, 0.0, 0.0, 0.0, 0.0}; }

Poly6 pmul(const Poly6 &p, const Poly6 &q) {
    Poly6 r{};
    for (int i = 0; i < 6; ++i) {
        if (p[i] == 0.0) continue;
        for (int j = 0; i + j < 6; ++j) r[i + j] += p[i] * q[j];
    }
    return r;
}

void acc(Poly6 &dst, double s, const Poly6 &p) {
    for (int i = 0; i < 6; ++i) dst[i] += s * p[i];
}

} // namespace

Vec3 stokeslet_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                       double mu) {
    require_kind(load, LoadKind::force, "stokeslet_segment");
    const SegmentGeometry g(xhat, seg, eps);
    const TnqTable T = build_table(g, stokeslet_need);
    return (g.L / (eight_pi * mu)) * stokeslet_sum(T, g, load.a, load.b);
}

Vec3 rotlet_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                    double mu) {
    require_kind(load, LoadKind::torque, "rotlet_segment");
    const SegmentGeometry g(xhat, seg, eps);
    const TnqTable T = build_table(g, rotlet_need);
    return (g.L / (eight_pi * mu)) * rotlet_sum(T, g, load.a, load.b);
}

Vec3 dipole_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                    double mu, DipoleVariant variant) {
    require_kind(load, LoadKind::dipole, "dipole_segment");
    const SegmentGeometry g(xhat, seg, eps);
    const TnqTable T =
        build_table(g, variant == DipoleVariant::standard ? std::span<const TnqIndex>(dipole_std_need)
                                                          : std::span<const TnqIndex>(dipole_kir_need));
    return (g.L / (eight_pi * mu)) * dipole_sum(T, g, load.a, load.b, variant);
}

Vec3 curl_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                  double mu) {
    // Taking the curl promotes each kernel one step up the ladder: the
    // Stokeslet integrand's curl is a rotlet-form field in f, and the rotlet
    // integrand's curl is the special dipole-form field in tau.
    const SegmentGeometry g(xhat, seg, eps);
    if (load.kind == LoadKind::force) {
        const TnqTable T = build_table(g, rotlet_need);
        return (g.L / (eight_pi * mu)) * rotlet_sum(T, g, load.a, load.b);
    }
    if (load.kind == LoadKind::torque) {
        const TnqTable T = build_table(g, dipole_kir_need);
        return (g.L / (eight_pi * mu)) * dipole_sum(T, g, load.a, load.b, DipoleVariant::kirchhoff);
    }
    throw std::invalid_argument("curl_segment: dipole loads are not supported");
}

Vec3 image_system_segment(const Vec3 &xhat, const Segment &seg_original, const SegmentLoad &load,
                          double eps, double mu) {
    require_kind(load, LoadKind::force, "image_system_segment");
    const double H0 = seg_original.y0.z;
    const double H1 = seg_original.y1.z;
    if (!(H0 > 0.0) || !(H1 > 0.0))
        throw std::domain_error("image_system_segment: segment must lie strictly in z > 0");

    // The image segment mirrors the original through the wall; its geometry
    // hosts every integral below.
    const Segment img{seg_original.y0 - Vec3{0.0, 0.0, 2.0 * H0},
                      seg_original.y1 - Vec3{0.0, 0.0, 2.0 * H1}};
    const SegmentGeometry g(xhat, img, eps);
    const TnqTable T = build_table(g, image_need);

    const Vec3 fa = load.a;
    const Vec3 fb = load.b;
    // A mirrored Stokeslet with the sign-flipped force...
    Vec3 out = stokeslet_sum(T, g, -1.0 * fa, -1.0 * fb);

    // ...plus doublet, dipole, and rotlet-difference corrections. Each
    // correction integrand is a polynomial in alpha times R^-3 or R^-5; the
    // polynomial coefficients are assembled once and summed against the
    // table. H(alpha) interpolates the heights of the original segment, and
    // q flips the horizontal force components.
    const std::array<Poly6, 3> X = {lin(g.x0.x, g.v.x), lin(g.x0.y, g.v.y), lin(g.x0.z, g.v.z)};
    const std::array<Poly6, 3> F = {lin(fa.x, fb.x), lin(fa.y, fb.y), lin(fa.z, fb.z)};
    const std::array<Poly6, 3> Q = {lin(-fa.x, -fb.x), lin(-fa.y, -fb.y), lin(fa.z, fb.z)};
    const Poly6 Hp = lin(H0, H1 - H0);
    const Poly6 H2 = pmul(Hp, Hp);
    Poly6 qdx{};
    for (int i = 0; i < 3; ++i) acc(qdx, 1.0, pmul(Q[i], X[i]));

    const double e2 = eps * eps;
    std::array<Poly6, 3> C3{};
    std::array<Poly6, 3> C5{};
    for (int i = 0; i < 3; ++i) {
        acc(C3[i], 2.0, pmul(Hp, pmul(Q[2], X[i])));
        acc(C3[i], 2.0, pmul(Hp, pmul(X[2], Q[i])));
        acc(C3[i], -2.0, pmul(H2, Q[i]));
        acc(C5[i], -6.0, pmul(Hp, pmul(qdx, pmul(X[2], X[i]))));
        acc(C5[i], 6.0 * e2, pmul(H2, Q[i]));
        acc(C5[i], 6.0, pmul(H2, pmul(qdx, X[i])));
    }
    acc(C3[2], -2.0, pmul(Hp, qdx));
    // the doublet's vertical part keeps an eps^2 piece that has no singular
    // counterpart; dropping it breaks wall cancellation at O(eps^2)
    acc(C5[2], -6.0 * e2, pmul(Hp, qdx));
    const std::array<Poly6, 3> w = {pmul(X[2], F[0]), pmul(X[2], F[1]), [&] {
                                        Poly6 r{};
                                        acc(r, -1.0, pmul(F[0], X[0]));
                                        acc(r, -1.0, pmul(F[1], X[1]));
                                        return r;
                                    }()};
    for (int i = 0; i < 3; ++i) acc(C5[i], 6.0 * e2, pmul(Hp, w[i]));

    Vec3 add{};
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int n = 0; n <= 3; ++n) s += C3[i][static_cast<std::size_t>(n)] * T.at(n, -3);
        for (int n = 0; n <= 5; ++n) s += C5[i][static_cast<std::size_t>(n)] * T.at(n, -5);
        (i == 0 ? add.x : i == 1 ? add.y : add.z) = s;
    }
    out += add;
    return (g.L / (eight_pi * mu)) * out;
}

double pressure_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps) {
    if (load.kind == LoadKind::torque) return 0.0;
    const SegmentGeometry g(xhat, seg, eps);
    const double a0 = dot(load.a, g.x0);
    const double a1 = dot(load.a, g.v) + dot(load.b, g.x0);
    const double a2 = dot(load.b, g.v);
    const double e2 = eps * eps;
    if (load.kind == LoadKind::force) {
        const TnqTable T = build_table(g, pressure_force_need);
        double p = a0 * (2.0 * T.at(0, -5) + 3.0 * e2 * T.at(0, -7)) +
                   a1 * (2.0 * T.at(1, -5) + 3.0 * e2 * T.at(1, -7)) +
                   a2 * (2.0 * T.at(2, -5) + 3.0 * e2 * T.at(2, -7));
        return p * g.L / eight_pi;
    }
    const TnqTable T = build_table(g, pressure_dipole_need);
    const double p = a0 * T.at(0, -9) + a1 * T.at(1, -9) + a2 * T.at(2, -9);
    return -105.0 * e2 * e2 * p * g.L / eight_pi;
}

RodFieldSample rod_segment_field(const Vec3 &xhat, const Segment &seg, const SegmentLoad &force,
                                 const SegmentLoad &torque, double eps, double mu) {
    require_kind(force, LoadKind::force, "rod_segment_field");
    require_kind(torque, LoadKind::torque, "rod_segment_field");
    const SegmentGeometry g(xhat, seg, eps);
    const TnqTable T = build_table(g, rod_need);
    const double scale = g.L / (eight_pi * mu);
    const Vec3 u = stokeslet_sum(T, g, force.a, force.b) + rotlet_sum(T, g, torque.a, torque.b);
    const Vec3 curl =
        rotlet_sum(T, g, force.a, force.b) + dipole_sum(T, g, torque.a, torque.b, DipoleVariant::kirchhoff);
    return RodFieldSample{scale * u, 0.5 * scale * curl};
}

} // namespace stokeseg
