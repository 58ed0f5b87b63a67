#ifndef STOKESEG_POINT_KERNELS_HPP
#define STOKESEG_POINT_KERNELS_HPP

#include <numbers>

#include "stokeseg/vec3.hpp"

/// Regularized point kernels of Stokes flow. Each kernel spreads its
/// singularity over a blob of width eps, so every formula below is finite at
/// the source point itself. All velocities carry the 1/(8 pi mu) prefactor;
/// nothing is deferred to the caller.
namespace stokeseg {

/// Which regularization of the potential dipole to use. The two differ only in
/// the blob-dependent terms: the standard form pairs with the half-space image
/// system, the kirchhoff form is the one whose field is the exact curl of the
/// regularized rotlet and therefore drives the rod model.
enum class DipoleVariant { standard, kirchhoff };

enum class PressureKind { stokeslet, rotlet, dipole };

inline constexpr double eight_pi = 8.0 * std::numbers::pi;

/// Velocity at xhat of a regularized point force f located at y0.
///
///   8 pi mu u = (1/R + eps^2/R^3) f + (f.x) x / R^3,   R^2 = |x|^2 + eps^2.
inline Vec3 point_stokeslet(const Vec3 &xhat, const Vec3 &y0, const Vec3 &f, double eps, double mu) {
    const Vec3 x = xhat - y0;
    const double R2 = norm2(x) + eps * eps;
    const double R = std::sqrt(R2);
    const double R3 = R2 * R;
    return (1.0 / (eight_pi * mu)) * ((1.0 / R + eps * eps / R3) * f + (dot(f, x) / R3) * x);
}

/// Classical singular Stokeslet, kept for far-field validation. Do not call
/// with xhat == y0.
inline Vec3 singular_stokeslet(const Vec3 &xhat, const Vec3 &y0, const Vec3 &f, double mu) {
    const Vec3 x = xhat - y0;
    const double r = norm(x);
    return (1.0 / (eight_pi * mu)) * ((1.0 / r) * f + (dot(f, x) / (r * r * r)) * x);
}

/// Velocity due to a regularized point torque tau:
///   8 pi mu u = (2/R^3 + 3 eps^2/R^5) (tau x x).
/// This field is exactly half the curl of the Stokeslet field with f = tau.
inline Vec3 point_rotlet(const Vec3 &xhat, const Vec3 &y0, const Vec3 &tau, double eps, double mu) {
    const Vec3 x = xhat - y0;
    const double R2 = norm2(x) + eps * eps;
    const double R = std::sqrt(R2);
    const double R3 = R2 * R;
    const double R5 = R3 * R2;
    return (1.0 / (eight_pi * mu)) * ((2.0 / R3 + 3.0 * eps * eps / R5) * cross(tau, x));
}

/// Velocity due to a regularized potential dipole of strength g.
inline Vec3 point_dipole(const Vec3 &xhat, const Vec3 &y0, const Vec3 &g, double eps, double mu,
                         DipoleVariant variant) {
    const Vec3 x = xhat - y0;
    const double e2 = eps * eps;
    const double R2 = norm2(x) + e2;
    const double R = std::sqrt(R2);
    const double R3 = R2 * R;
    const double R5 = R3 * R2;
    Vec3 u;
    if (variant == DipoleVariant::standard) {
        u = -(2.0 / R3 - 6.0 * e2 / R5) * g + (6.0 * dot(g, x) / R5) * x;
    } else {
        const double R7 = R5 * R2;
        u = -(2.0 / R3 + 3.0 * e2 / R5 - 15.0 * e2 * e2 / R7) * g
            + (dot(g, x) * (6.0 / R5 + 15.0 * e2 / R7)) * x;
    }
    return (1.0 / (eight_pi * mu)) * u;
}

/// Pressure fields that accompany the velocity kernels. The rotlet is
/// pressure-free; the dipole pressure is a pure blob artifact, vanishing like
/// eps^4. Strength vector f is the force (stokeslet) or dipole strength.
inline double point_pressure(const Vec3 &xhat, const Vec3 &y0, const Vec3 &f, double eps,
                             PressureKind kind) {
    if (kind == PressureKind::rotlet) return 0.0;
    const Vec3 x = xhat - y0;
    const double e2 = eps * eps;
    const double R2 = norm2(x) + e2;
    const double R = std::sqrt(R2);
    const double R4 = R2 * R2;
    const double R7 = R4 * R2 * R;
    if (kind == PressureKind::stokeslet) return dot(f, x) * (2.0 * R2 + 3.0 * e2) / (eight_pi * R7);
    return -dot(f, x) * 105.0 * e2 * e2 / (eight_pi * R7 * R2);
}

} // namespace stokeseg

#endif
