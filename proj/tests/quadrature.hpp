#ifndef STOKESEG_TESTS_QUADRATURE_HPP
#define STOKESEG_TESTS_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stokeseg/line_integrals.hpp"
#include "stokeseg/vec3.hpp"

/// Adaptive quadrature oracles for the segment integrals. These deliberately
/// share no code with the library: they integrate the defining formulas
/// numerically and are the independent reference the closed forms are tested
/// against.
namespace testutil {

/// Integrates f over alpha in [0,1]. The integrand of a near-field kernel is
/// a sharp spike at the closest-approach parameter; a single adaptive pass
/// can step over it and converge confidently to a wrong answer. The interval
/// is therefore pre-split at that parameter and at a few blob widths around
/// it before the adaptive rule runs.
template <class F>
double integrate_segment(const F &f, const stokeseg::SegmentGeometry &g) {
    using rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    std::vector<double> knots = {0.0, 1.0};
    const double astar = -g.u0 / g.L2;
    const double w = 5.0 * g.eps / g.L;
    for (double a : {astar, astar - w, astar + w})
        if (a > 0.0 && a < 1.0) knots.push_back(a);
    std::sort(knots.begin(), knots.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i + 1] > knots[i])) continue;
        total += rule::integrate(f, knots[i], knots[i + 1], 15, 1e-13);
    }
    return total;
}

/// Componentwise version for vector-valued integrands.
template <class F>
stokeseg::Vec3 integrate_segment_vec(const F &f, const stokeseg::SegmentGeometry &g) {
    using stokeseg::Vec3;
    const double x = integrate_segment([&](double a) { return f(a).x; }, g);
    const double y = integrate_segment([&](double a) { return f(a).y; }, g);
    const double z = integrate_segment([&](double a) { return f(a).z; }, g);
    return Vec3{x, y, z};
}

/// Reference for T_{n,q}: direct integration of alpha^n R(alpha)^q.
inline double tnq_oracle(const stokeseg::Vec3 &xhat, const stokeseg::Segment &seg, double eps,
                         int n, int q) {
    const stokeseg::SegmentGeometry g(xhat, seg, eps);
    const auto f = [&](double a) {
        const stokeseg::Vec3 x = g.x0 + a * g.v;
        const double R2 = dot(x, x) + eps * eps;
        return std::pow(a, n) * std::pow(R2, 0.5 * q);
    };
    return integrate_segment(f, g);
}

} // namespace testutil

#endif
