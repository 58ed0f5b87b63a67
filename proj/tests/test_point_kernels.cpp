#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "stokeseg/point_kernels.hpp"

using namespace stokeseg;

namespace {

Vec3 random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Vec3 d{n(rng), n(rng), n(rng)};
    return normalized(d);
}

Vec3 random_vec(std::mt19937_64 &rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return Vec3{u(rng), u(rng), u(rng)};
}

/// Central-difference Jacobian J[i][j] = du_i/dx_j of a velocity field.
template <class Field>
std::array<std::array<double, 3>, 3> fd_jacobian(const Field &field, const Vec3 &x, double h) {
    std::array<std::array<double, 3>, 3> J{};
    for (int j = 0; j < 3; ++j) {
        Vec3 dx{};
        (j == 0 ? dx.x : j == 1 ? dx.y : dx.z) = h;
        const Vec3 up = field(x + dx);
        const Vec3 um = field(x - dx);
        const Vec3 d = (up - um) / (2.0 * h);
        J[0][j] = d.x;
        J[1][j] = d.y;
        J[2][j] = d.z;
    }
    return J;
}

template <class Field>
double fd_divergence(const Field &field, const Vec3 &x, double h) {
    const auto J = fd_jacobian(field, x, h);
    return J[0][0] + J[1][1] + J[2][2];
}

template <class Field>
Vec3 fd_curl(const Field &field, const Vec3 &x, double h) {
    const auto J = fd_jacobian(field, x, h);
    return Vec3{J[2][1] - J[1][2], J[0][2] - J[2][0], J[1][0] - J[0][1]};
}

double jacobian_norm(const std::array<std::array<double, 3>, 3> &J) {
    double s = 0.0;
    for (const auto &row : J)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

} // namespace

TEST_SUITE("point_kernels") {

TEST_CASE("stokeslet pinned values") {
    const Vec3 zero{};
    CHECK(norm(point_stokeslet(Vec3{0.3, -0.2, 1.1}, zero, zero, 0.7, 2.0)) == 0.0);

    // Evaluation at the blob center: u = 2 f / (8 pi mu eps) = f / (4 pi).
    const Vec3 u = point_stokeslet(zero, zero, Vec3{1, 0, 0}, 1.0, 1.0);
    CHECK(u.x == doctest::Approx(0.079577471545947668).epsilon(1e-15));
    CHECK(u.y == 0.0);
    CHECK(u.z == 0.0);
}

TEST_CASE("stokeslet far field matches singular kernel") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 40; ++i) {
        const Vec3 y0 = random_vec(rng, 1.0);
        const Vec3 f = random_vec(rng, 2.0);
        const double eps = std::pow(10.0, std::uniform_real_distribution<double>(-3, -1)(rng));
        const Vec3 xhat = y0 + 100.0 * eps * random_unit(rng);
        const Vec3 ur = point_stokeslet(xhat, y0, f, eps, 1.3);
        const Vec3 us = singular_stokeslet(xhat, y0, f, 1.3);
        CHECK(norm(ur - us) <= 2e-4 * norm(us));
    }
}

TEST_CASE("stokeslet regularization error decays as eps^2") {
    const Vec3 y0{0.1, 0.2, -0.3};
    const Vec3 f{0.4, -1.1, 0.7};
    const Vec3 xhat = y0 + Vec3{0.6, 0.3, -0.2};
    const Vec3 us = singular_stokeslet(xhat, y0, f, 1.0);
    const double e1 = norm(point_stokeslet(xhat, y0, f, 1e-2, 1.0) - us);
    const double e2 = norm(point_stokeslet(xhat, y0, f, 5e-3, 1.0) - us);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("rotlet pinned values") {
    const Vec3 zero{};
    const Vec3 tau{0, 0, 1};
    CHECK(norm(point_rotlet(zero, zero, tau, 0.5, 1.0)) == 0.0);
    // tau parallel to x
    CHECK(norm(point_rotlet(Vec3{0, 0, 2}, zero, tau, 0.5, 1.0)) == 0.0);

    // tau = e3, x = e1, eps = 1: u = (2/2^1.5 + 3/2^2.5) e2 / (8 pi).
    const Vec3 u = point_rotlet(Vec3{1, 0, 0}, zero, tau, 1.0, 1.0);
    CHECK(u.x == 0.0);
    CHECK(u.y == doctest::Approx(0.049236048539841738).epsilon(1e-15));
    CHECK(u.z == 0.0);
}

TEST_CASE("dipole pinned values") {
    const Vec3 zero{};
    CHECK(norm(point_dipole(Vec3{1, 2, 3}, zero, zero, 0.5, 1.0, DipoleVariant::standard)) == 0.0);

    const Vec3 u = point_dipole(zero, zero, Vec3{1, 0, 0}, 1.0, 1.0, DipoleVariant::standard);
    CHECK(u.x == doctest::Approx(0.15915494309189534).epsilon(1e-15));
    CHECK(u.y == 0.0);
    CHECK(u.z == 0.0);
}

TEST_CASE("dipole variants agree far from the blob") {
    std::mt19937_64 rng(202);
    for (int i = 0; i < 40; ++i) {
        const Vec3 y0 = random_vec(rng, 1.0);
        const Vec3 g = random_vec(rng, 2.0);
        const double eps = 0.01;
        const Vec3 xhat = y0 + 100.0 * eps * random_unit(rng);
        const Vec3 us = point_dipole(xhat, y0, g, eps, 1.0, DipoleVariant::standard);
        const Vec3 uk = point_dipole(xhat, y0, g, eps, 1.0, DipoleVariant::kirchhoff);
        CHECK(norm(us - uk) <= 1e-3 * norm(us));
    }
}

TEST_CASE("pressure pinned values") {
    const Vec3 zero{};
    std::mt19937_64 rng(303);
    for (int i = 0; i < 20; ++i) {
        const Vec3 y0 = random_vec(rng, 1.0);
        const Vec3 xhat = y0 + random_vec(rng, 2.0);
        const Vec3 f = random_vec(rng, 3.0);
        CHECK(point_pressure(xhat, y0, f, 0.3, PressureKind::rotlet) == 0.0);
        // strength orthogonal to the offset kills every kind
        const Vec3 x = xhat - y0;
        const Vec3 fperp = cross(x, random_unit(rng));
        CHECK(std::abs(point_pressure(xhat, y0, fperp, 0.3, PressureKind::stokeslet)) < 1e-14);
        CHECK(std::abs(point_pressure(xhat, y0, fperp, 0.3, PressureKind::dipole)) < 1e-14);
    }
    // singular limit: x = e1, f = e1, eps = 0 gives p = 2 / (8 pi)
    const double p = point_pressure(Vec3{1, 0, 0}, zero, Vec3{1, 0, 0}, 0.0, PressureKind::stokeslet);
    CHECK(p == doctest::Approx(0.079577471545947668).epsilon(1e-15));
}

TEST_CASE("linearity in the strength vector") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 50; ++i) {
        const Vec3 y0 = random_vec(rng, 1.0);
        const Vec3 xhat = y0 + random_vec(rng, 2.0);
        const Vec3 f = random_vec(rng, 3.0);
        const Vec3 g = random_vec(rng, 3.0);
        const double a = std::uniform_real_distribution<double>(-2, 2)(rng);
        const double b = std::uniform_real_distribution<double>(-2, 2)(rng);
        const double eps = 0.2;

        const Vec3 comb = a * f + b * g;
        auto rel = [](const Vec3 &lhs, const Vec3 &rhs) {
            return norm(lhs - rhs) / std::max(norm(rhs), 1e-300);
        };
        CHECK(rel(point_stokeslet(xhat, y0, comb, eps, 1.0),
                  a * point_stokeslet(xhat, y0, f, eps, 1.0) +
                      b * point_stokeslet(xhat, y0, g, eps, 1.0)) < 1e-13);
        CHECK(rel(point_rotlet(xhat, y0, comb, eps, 1.0),
                  a * point_rotlet(xhat, y0, f, eps, 1.0) +
                      b * point_rotlet(xhat, y0, g, eps, 1.0)) < 1e-13);
        for (auto variant : {DipoleVariant::standard, DipoleVariant::kirchhoff})
            CHECK(rel(point_dipole(xhat, y0, comb, eps, 1.0, variant),
                      a * point_dipole(xhat, y0, f, eps, 1.0, variant) +
                          b * point_dipole(xhat, y0, g, eps, 1.0, variant)) < 1e-13);
    }
}

TEST_CASE("velocity fields are divergence free") {
    std::mt19937_64 rng(505);
    for (int i = 0; i < 100; ++i) {
        const Vec3 y0 = random_vec(rng, 1.0);
        const Vec3 s = random_vec(rng, 2.0);
        const double eps = std::pow(10.0, std::uniform_real_distribution<double>(-2, 0)(rng));
        const Vec3 xhat = y0 + std::uniform_real_distribution<double>(0.3, 2.0)(rng) * random_unit(rng);
        const double h = 1e-5 * norm(xhat - y0);

        auto check_divfree = [&](auto field) {
            const double div = fd_divergence(field, xhat, h);
            const double grad = jacobian_norm(fd_jacobian(field, xhat, h));
            CHECK(std::abs(div) <= 1e-6 * grad);
        };
        check_divfree([&](const Vec3 &x) { return point_stokeslet(x, y0, s, eps, 1.0); });
        check_divfree([&](const Vec3 &x) { return point_rotlet(x, y0, s, eps, 1.0); });
        check_divfree([&](const Vec3 &x) { return point_dipole(x, y0, s, eps, 1.0, DipoleVariant::standard); });
        check_divfree([&](const Vec3 &x) { return point_dipole(x, y0, s, eps, 1.0, DipoleVariant::kirchhoff); });
    }
}

TEST_CASE("curl ladder: stokeslet -> rotlet -> kirchhoff dipole") {
    std::mt19937_64 rng(606);
    for (int i = 0; i < 40; ++i) {
        const Vec3 y0 = random_vec(rng, 1.0);
        const Vec3 s = random_vec(rng, 2.0);
        const double eps = 0.3;
        const Vec3 xhat = y0 + std::uniform_real_distribution<double>(0.3, 1.5)(rng) * random_unit(rng);
        const double h = 1e-5 * norm(xhat - y0);

        const Vec3 curl_s =
            fd_curl([&](const Vec3 &x) { return point_stokeslet(x, y0, s, eps, 1.0); }, xhat, h);
        const Vec3 rot = point_rotlet(xhat, y0, s, eps, 1.0);
        CHECK(norm(curl_s - rot) <= 1e-5 * std::max(norm(rot), 1e-300));

        const Vec3 curl_r =
            fd_curl([&](const Vec3 &x) { return point_rotlet(x, y0, s, eps, 1.0); }, xhat, h);
        const Vec3 dip = point_dipole(xhat, y0, s, eps, 1.0, DipoleVariant::kirchhoff);
        CHECK(norm(curl_r - dip) <= 1e-5 * std::max(norm(dip), 1e-300));
    }
}

} // TEST_SUITE
