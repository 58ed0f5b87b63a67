#ifndef STOKESEG_LINE_INTEGRALS_HPP
#define STOKESEG_LINE_INTEGRALS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>

#include "stokeseg/vec3.hpp"

namespace stokeseg {

/// Oriented straight segment from y0 to y1. Every formula in this library uses
/// the parametrization y(alpha) = y0 - alpha * v with v = y0 - y1, so alpha
/// runs from 0 at y0 to 1 at y1. The one place this sign convention is chosen
/// is here; everything else inherits it.
struct Segment {
    Vec3 y0;
    Vec3 y1;

    Vec3 direction() const { return y0 - y1; } // v
    double length() const { return norm(y0 - y1); }
};

/// Scalar geometry of one (evaluation point, segment, eps) triple, computed
/// once and shared by all integrals over that segment.
///
/// Writing x(alpha) = xhat - y(alpha) and R^2(alpha) = |x(alpha)|^2 + eps^2,
/// the dot product u(alpha) = x(alpha).v is linear, u = u0 + alpha L^2, and
///
///     L^2 R^2(alpha) - u^2(alpha) = L^2 c2     for all alpha,
///
/// with c2 >= eps^2. The constant is stored as c2L2 = L^2 c2 in the
/// cancellation-free form L^2 eps^2 + |x0 x v|^2; forming it as a difference
/// of squares would lose all digits near the segment axis.
struct SegmentGeometry {
    Vec3 x0;     // xhat - y0
    Vec3 v;      // y0 - y1
    double L = 0.0;
    double L2 = 0.0;
    double u0 = 0.0; // x.v at alpha = 0
    double u1 = 0.0; // x.v at alpha = 1
    double R0 = 0.0; // regularized distance to y0
    double R1 = 0.0; // regularized distance to y1
    double c2L2 = 0.0;
    double eps = 0.0;

    /// Throws std::invalid_argument for a degenerate (zero-length) segment.
    SegmentGeometry(const Vec3 &xhat, const Segment &seg, double eps);

    double c2() const { return c2L2 / L2; }
};

/// One requested integral: the pair (n, q) of T_{n,q}.
using TnqIndex = std::pair<int, int>;

/// Cached values of T_{n,q} = int_0^1 alpha^n R(alpha)^q dalpha for a single
/// geometry. Orders n run 0..5; exponents q live in {5,3,1,-1,-3,-5,-7,-9}.
/// The positive columns beyond q = 1 exist because the order recursion for
/// T_{n,q} consumes T_{n-2,q+2}; they are filled only as dependencies.
///
/// The table is a throwaway value type: build it, read it, drop it. No
/// caching across calls.
class TnqTable {
  public:
    static constexpr int max_order = 5;

    /// True iff (n, q) is inside the supported index family.
    static bool supported(int n, int q);

    bool has(int n, int q) const;

    /// Value lookup; throws std::out_of_range when the entry was not built.
    double at(int n, int q) const;

    /// Stores a value. Entries of one column must be inserted in order of
    /// increasing n (throws std::logic_error otherwise, and std::domain_error
    /// outside the supported family).
    void insert(int n, int q, double value);

  private:
    // Column layout: index (5 - q) / 2, i.e. q = 5,3,1,-1,-3,-5,-7,-9.
    std::array<std::array<double, max_order + 1>, 8> val_{};
    std::array<std::int8_t, 8> top_{-1, -1, -1, -1, -1, -1, -1, -1};
};

/// Closed-form bottom of the table: T_{0,1}, T_{0,-1}, T_{0,-3} and the
/// first-order entries T_{1,-1}, T_{1,-3} needed by a segment of Stokeslets.
TnqTable base_cases(const SegmentGeometry &geom);

/// Lowers the exponent: given T_{0,q}, returns T_{0,q-2} through the identity
/// obtained by differentiating R^q along the segment. Used with q = -3, -5, -7
/// to reach the q = -5, -7, -9 families whose antiderivatives are not tabulated.
/// Requires q != 0.
double downshift_q(double T0q, const SegmentGeometry &geom, int q);

/// One step of the order recursion,
///
///   T_{n,q} = [alpha^{n-1} R^{q+2}]_0^1 / ((q+2) L^2)
///             - (n-1)/((q+2) L^2) * T_{n-2,q+2}  -  (u0/L^2) * T_{n-1,q},
///
/// reading the dependencies from an existing table (throws std::logic_error if
/// they are absent). Valid for q != -2, n >= 1; n = 1 has no T_{n-2} term.
double recurse(const TnqTable &table, const SegmentGeometry &geom, int n, int q);

/// Builds exactly the requested entries plus their dependencies, in dependency
/// order. Rejects q = -2 and n > 5 with std::domain_error.
///
/// Internally three evaluation strategies cover the whole geometry range: the
/// closed forms plus downshift everywhere generic; a binomial series in
/// c2/t^2 for points close to the segment axis but outside the segment, where
/// the downshift denominator cancels catastrophically; and a binomial series
/// in t^2/c2 when eps dwarfs the segment, where the recursion's boundary
/// terms cancel instead. Branch selection is automatic.
TnqTable build_table(const SegmentGeometry &geom, std::span<const TnqIndex> need);
TnqTable build_table(const Vec3 &xhat, const Segment &seg, double eps, std::span<const TnqIndex> need);

} // namespace stokeseg

#endif
