#ifndef STOKESEG_SEGMENT_KERNELS_HPP
#define STOKESEG_SEGMENT_KERNELS_HPP

#include "stokeseg/line_integrals.hpp"
#include "stokeseg/point_kernels.hpp"
#include "stokeseg/vec3.hpp"

namespace stokeseg {

enum class LoadKind { force, torque, dipole };

/// Linearly varying strength density along a segment, w(alpha) = a + alpha b.
/// Built from endpoint values so call sites never juggle the slope form.
struct SegmentLoad {
    LoadKind kind = LoadKind::force;
    Vec3 a; // value at alpha = 0 (the y0 end)
    Vec3 b; // slope; value at alpha is a + alpha b

    static SegmentLoad from_endpoints(LoadKind kind, const Vec3 &w0, const Vec3 &w1) {
        return SegmentLoad{kind, w0, w1 - w0};
    }
    Vec3 at(double alpha) const { return a + alpha * b; }
};

/// Velocity at xhat from a segment of regularized Stokeslets with a linear
/// force density (force load). Exact line integral, no quadrature.
Vec3 stokeslet_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                       double mu);

/// Velocity at xhat from a segment of regularized rotlets with a linear
/// torque density (torque load).
Vec3 rotlet_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                    double mu);

/// Velocity at xhat from a segment of potential dipoles with a linear dipole
/// density (dipole load); the variant selects which regularization of the
/// dipole kernel is integrated.
Vec3 dipole_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                    double mu, DipoleVariant variant);

/// Curl of the segment velocity field at xhat. A force load gives the curl of
/// the Stokeslet integrand, which is a rotlet-form field in f; a torque load
/// gives the curl of the rotlet integrand, a dipole-form field in tau. Dipole
/// loads are rejected.
Vec3 curl_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps,
                  double mu);

/// Image-system contribution for a plane wall at z = 0: the velocity at xhat
/// of the image of seg_original (which must lie strictly in z > 0) carrying
/// the given force load. Adding it to stokeslet_segment of the original
/// segment gives a field that vanishes on the wall.
Vec3 image_system_segment(const Vec3 &xhat, const Segment &seg_original, const SegmentLoad &load,
                          double eps, double mu);

/// Pressure at xhat: force loads integrate the Stokeslet pressure, dipole
/// loads the dipole pressure, torque loads return exactly zero.
double pressure_segment(const Vec3 &xhat, const Segment &seg, const SegmentLoad &load, double eps);

/// Velocity and angular velocity at xhat from one rod element carrying both a
/// force density and a torque density. Equivalent to stokeslet_segment +
/// rotlet_segment for u and half the two curl_segment fields for omega, but
/// evaluated from a single shared integral table; this is the hot path of the
/// rod model.
struct RodFieldSample {
    Vec3 u;
    Vec3 omega;
};
RodFieldSample rod_segment_field(const Vec3 &xhat, const Segment &seg, const SegmentLoad &force,
                                 const SegmentLoad &torque, double eps, double mu);

} // namespace stokeseg

#endif
