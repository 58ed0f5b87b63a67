#ifndef STOKESEG_MOBILITY_HPP
#define STOKESEG_MOBILITY_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "stokeseg/errors.hpp"
#include "stokeseg/segment_kernels.hpp"

namespace stokeseg {

/// Which discretization of the filament velocity field to use: exact segment
/// integrals with linear densities, or the point-force superposition with
/// trapezoid node weights (the baseline the segment method is compared to).
enum class Method { segments, mrs };

/// Piecewise-linear filament: ordered nodes, consecutive pairs are segments.
struct FilamentMesh {
    std::vector<Vec3> nodes;

    /// Validates on construction: at least two nodes, all segments of
    /// positive length (throws std::invalid_argument otherwise).
    explicit FilamentMesh(std::vector<Vec3> pts);

    std::size_t node_count() const { return nodes.size(); }
    std::size_t segment_count() const { return nodes.size() - 1; }
    Segment segment(std::size_t k) const { return Segment{nodes[k], nodes[k + 1]}; }
    double segment_length(std::size_t k) const;
    double total_length() const;

    /// Trapezoid quadrature weight of each node: half the summed length of
    /// its adjacent segments. Converts between nodal force densities and
    /// nodal point forces.
    std::vector<double> node_weights() const;

    /// n points equally spaced in arclength along the polyline, both ends
    /// included; requires n >= 2.
    std::vector<Vec3> arclength_points(std::size_t n) const;
};

/// Dense map from stacked nodal force densities (3 N_n) to stacked velocities
/// at the eval points (3 N_eval). Every physical prefactor, including the
/// 1/(8 pi mu) of the kernels, lives inside the entries: u = m * f directly.
struct MobilityMatrix {
    Eigen::MatrixXd m;
    /// 1-norm condition estimate of the square system; NaN until a solve (or
    /// an explicit estimate) has factorized the matrix.
    double condition_estimate = std::numeric_limits<double>::quiet_NaN();
};

MobilityMatrix assemble(const FilamentMesh &mesh, std::span<const Vec3> eval_points, double eps,
                        double mu, Method method = Method::segments);

/// Diagnostics of a constraint solve.
struct SolveReport {
    double condition_estimate = 0.0;
    double relative_residual = 0.0;
    int refinement_rounds = 0;
    /// Set when the condition estimate exceeds the warning threshold (1e10)
    /// while staying below the hard failure threshold; the caller decides how
    /// loudly to surface it.
    bool conditioning_warning = false;
};

/// Finds nodal force densities reproducing the prescribed node velocities.
/// Dense partial-pivot LU with iterative refinement; the returned densities
/// satisfy |M f - u| <= 1e-10 |u|. Throws IllConditionedError when the
/// condition estimate passes 1e14, is nonfinite, or the residual target
/// cannot be met.
std::vector<Vec3> solve_forces(const FilamentMesh &mesh, std::span<const Vec3> node_velocities,
                               double eps, double mu, Method method = Method::segments,
                               SolveReport *report = nullptr);

/// Superposition of regularized point Stokeslets: velocity at each eval point
/// due to point forces at the given locations. The caller owns any
/// density-to-force weighting.
std::vector<Vec3> mrs_baseline_velocity(std::span<const Vec3> points, std::span<const Vec3> forces,
                                        std::span<const Vec3> eval_points, double eps, double mu);

/// RMS boundary-velocity error: the filament surface velocity is sampled at
/// check_points arclength-uniform locations and compared with the prescribed
/// uniform velocity U.
double leak(const FilamentMesh &mesh, std::span<const Vec3> densities, const Vec3 &U, double eps,
            double mu, std::size_t check_points, Method method = Method::segments);

/// Net hydrodynamic force of the solved density field: per-segment averages
/// for the segment method, trapezoid-weighted node sums for the baseline.
Vec3 drag(const FilamentMesh &mesh, std::span<const Vec3> densities, Method method = Method::segments);

} // namespace stokeseg

#endif
