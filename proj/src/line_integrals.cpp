#include "stokeseg/line_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stokeseg {

namespace {

constexpr std::array<int, 8> col_q = {5, 3, 1, -1, -3, -5, -7, -9};
// Maximum order kept per column. The positive columns only ever appear as
// recursion dependencies of lower orders, so they stay short.
constexpr std::array<int, 8> col_cap_max = {1, 3, 5, 5, 5, 5, 5, 5};

// Branch threshold for both binomial series: the expansion variable is kept
// below 1/4, which bounds the term ratio and keeps truncation error far below
// double precision within the iteration caps.
constexpr double series_threshold = 0.25;

int column_of(int q) { return (5 - q) / 2; }

bool valid_q(int q) { return q <= 5 && q >= -9 && (q % 2) != 0; }

// Integer power by repeated multiplication; exponents here never exceed 9 in
// magnitude, so this beats std::pow and keeps results bit-reproducible.
double powi(double x, int e) {
    if (e < 0) return 1.0 / powi(x, -e);
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

/// Shifted endpoint function s(alpha) = L R(alpha) + u(alpha) evaluated
/// without cancellation: for u < 0 the equivalent form c2L2 / (L R - u) adds
/// two positives instead of subtracting nearly equal magnitudes.
double stable_lru(double L, double R, double u, double c2L2) {
    return u >= 0.0 ? L * R + u : c2L2 / (L * R - u);
}

/// T_{0,q} for a point close to the segment axis but outside the segment
/// (both endpoint projections on the same side). Expands
/// R^q = |t|^q (1 + c2/t^2)^{q/2} in the small ratio c2/t^2, where t is the
/// signed axial coordinate; each power of |t| integrates in closed form.
/// The two endpoint distances satisfy afar = anear + L exactly, so the power
/// difference is evaluated as anear^{p+1} expm1((p+1) log1p(L/anear)), which
/// neither overflows for large |p| nor cancels when the segment is short
/// compared with its distance.
double axis_base(int q, double t0, double t1, double c2, double L) {
    const double anear = std::min(std::abs(t0), std::abs(t1));
    const double lr = std::log1p(L / anear);
    const double x = c2 / (anear * anear);
    const double lead = powi(anear, q + 1);
    double out = 0.0;
    double coef = 1.0; // binom(q/2, k)
    double xk = 1.0;
    for (int k = 0; k < 200; ++k) {
        const int p1 = q - 2 * k + 1;
        const double term = coef * xk * std::expm1(p1 * lr) / p1;
        out += term;
        if (k > 2 && std::abs(term) < 1e-18 * std::abs(out)) break;
        coef *= (0.5 * q - k) / (k + 1);
        xk *= x;
    }
    return lead * out / L;
}

/// T_{n,q} for a segment much shorter than the blob width (both endpoint
/// projections inside |t| <= sqrt(c2)/2). Expands R^q = c2^{q/2}(1+t^2/c2)^{q/2}
/// and integrates the resulting polynomials in alpha term by term. This is the
/// regime where the order recursion loses digits to boundary cancellation.
double center_entry(int n, int q, double b, double c2, double L2) {
    constexpr double binom6[6][6] = {
        {1, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
        {1, 3, 3, 1, 0, 0}, {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
    const double bp1 = 1.0 + b;
    double nbpow[6]; // (-b)^j
    nbpow[0] = 1.0;
    for (int j = 1; j <= n; ++j) nbpow[j] = nbpow[j - 1] * (-b);

    double out = 0.0;
    double coef = 1.0;                    // binom(q/2, k)
    double fac = std::pow(c2, 0.5 * q);   // c2^{q/2 - k} L^{2k}
    double p1k = bp1;                     // (1+b)^{2k+1}
    double pbk = b;                       // b^{2k+1}
    for (int k = 0; k < 120; ++k) {
        // int_0^1 alpha^n (alpha + b)^{2k} dalpha * L^{2k} via beta = alpha + b
        double ink = 0.0;
        double p1 = p1k;
        double pb = pbk;
        for (int m = 0; m <= n; ++m) {
            const int P = 2 * k + m + 1;
            ink += binom6[n][m] * nbpow[n - m] * (p1 - pb) / P;
            p1 *= bp1;
            pb *= b;
        }
        const double term = coef * fac * ink;
        out += term;
        if (k > 2 && std::abs(term) < 1e-18 * std::abs(out)) break;
        coef *= (0.5 * q - k) / (k + 1);
        fac *= L2 / c2;
        p1k *= bp1 * bp1;
        pbk *= b * b;
    }
    return out;
}

} // namespace

SegmentGeometry::SegmentGeometry(const Vec3 &xhat, const Segment &seg, double eps_in) {
    v = seg.y0 - seg.y1;
    L2 = dot(v, v);
    if (!(L2 > 0.0))
        throw std::invalid_argument("SegmentGeometry: segment endpoints must be distinct");
    L = std::sqrt(L2);
    x0 = xhat - seg.y0;
    u0 = dot(x0, v);
    u1 = u0 + L2;
    eps = eps_in;
    const Vec3 xv = cross(x0, v);
    c2L2 = L2 * eps * eps + dot(xv, xv);
    R0 = std::sqrt(dot(x0, x0) + eps * eps);
    const Vec3 x1 = xhat - seg.y1;
    R1 = std::sqrt(dot(x1, x1) + eps * eps);
}

bool TnqTable::supported(int n, int q) {
    if (!valid_q(q) || n < 0) return false;
    return n <= col_cap_max[static_cast<std::size_t>(column_of(q))];
}

bool TnqTable::has(int n, int q) const {
    return supported(n, q) && n <= top_[static_cast<std::size_t>(column_of(q))];
}

double TnqTable::at(int n, int q) const {
    if (!has(n, q)) throw std::out_of_range("TnqTable::at: entry not built");
    const auto col = static_cast<std::size_t>(column_of(q));
    return val_[col][static_cast<std::size_t>(n)];
}

void TnqTable::insert(int n, int q, double value) {
    if (!supported(n, q)) throw std::domain_error("TnqTable::insert: index outside supported family");
    const auto col = static_cast<std::size_t>(column_of(q));
    if (n != top_[col] + 1)
        throw std::logic_error("TnqTable::insert: column must be filled in order of increasing n");
    val_[col][static_cast<std::size_t>(n)] = value;
    top_[col] = static_cast<std::int8_t>(n);
}

double downshift_q(double T0q, const SegmentGeometry &geom, int q) {
    if (q == 0) throw std::domain_error("downshift_q: q must be nonzero");
    const double bnd = geom.u1 * powi(geom.R1, q) - geom.u0 * powi(geom.R0, q);
    return (geom.L2 * (1 + q) * T0q - bnd) / (q * geom.c2L2);
}

double recurse(const TnqTable &table, const SegmentGeometry &geom, int n, int q) {
    if (q == -2 || n < 1 || !TnqTable::supported(n, q))
        throw std::domain_error("recurse: invalid order or exponent");
    const double denom = (q + 2) * geom.L2;
    double t = (powi(geom.R1, q + 2) - (n == 1 ? powi(geom.R0, q + 2) : 0.0)) / denom;
    t -= geom.u0 / geom.L2 * table.at(n - 1, q);
    if (n >= 2) t -= static_cast<double>(n - 1) / denom * table.at(n - 2, q + 2);
    return t;
}

TnqTable base_cases(const SegmentGeometry &geom) {
    static constexpr TnqIndex need[] = {{0, 1}, {0, -1}, {1, -1}, {0, -3}, {1, -3}};
    return build_table(geom, need);
}

TnqTable build_table(const SegmentGeometry &geom, std::span<const TnqIndex> need) {
    // Per-column highest requested order, then the dependency closure.
    std::array<int, 8> cap;
    cap.fill(-1);
    for (const auto &[n, q] : need) {
        if (!valid_q(q)) throw std::domain_error("build_table: exponent q outside supported set");
        const auto col = static_cast<std::size_t>(column_of(q));
        if (n < 0 || n > col_cap_max[col]) throw std::domain_error("build_table: order n out of range");
        cap[col] = std::max(cap[col], n);
    }
    // (a) the order recursion pulls T_{n-2, q+2}
    for (std::size_t i = 7; i >= 1; --i)
        if (cap[i] >= 2) cap[i - 1] = std::max(cap[i - 1], cap[i] - 2);
    // (b) the downshift chain walks q = -3 -> -5 -> -7 -> -9 through the bases
    for (std::size_t i = 7; i >= 5; --i)
        if (cap[i] >= 0) cap[i - 1] = std::max(cap[i - 1], 0);
    // (c) the positive bases are built by upshifting from T_{0,1}
    for (std::size_t i = 0; i <= 1; ++i)
        if (cap[i] >= 0) cap[i + 1] = std::max(cap[i + 1], 0);

    TnqTable T;
    const double L = geom.L;
    const double L2 = geom.L2;
    const double c2L2 = geom.c2L2;
    const double c2 = c2L2 / L2;
    const double t0 = geom.u0 / L;
    const double t1 = geom.u1 / L;

    if (std::max(t0 * t0, t1 * t1) <= series_threshold * c2) {
        const double b = geom.u0 / L2;
        for (std::size_t i = 0; i < 8; ++i)
            for (int n = 0; n <= cap[i]; ++n)
                T.insert(n, col_q[i], center_entry(n, col_q[i], b, c2, L2));
        return T;
    }

    const double s0 = stable_lru(L, geom.R0, geom.u0, c2L2);
    const double s1 = stable_lru(L, geom.R1, geom.u1, c2L2);
    const double logr = std::log(s1 / s0);
    if (cap[3] >= 0) T.insert(0, -1, logr / L);
    if (cap[2] >= 0)
        T.insert(0, 1, (geom.R1 * geom.u1 - geom.R0 * geom.u0) / (2.0 * L2) + c2L2 * logr / (2.0 * L2 * L));
    for (int q = 3; q <= 5; q += 2) {
        if (cap[static_cast<std::size_t>(column_of(q))] < 0) continue;
        const double bnd = geom.u1 * powi(geom.R1, q) - geom.u0 * powi(geom.R0, q);
        T.insert(0, q, (bnd + q * c2L2 * T.at(0, q - 2)) / (L2 * (1 + q)));
    }

    const bool axis_far = (t0 * t1 > 0.0) && (c2 < series_threshold * std::min(t0 * t0, t1 * t1));
    if (axis_far) {
        for (int q = -3; q >= -9; q -= 2)
            if (cap[static_cast<std::size_t>(column_of(q))] >= 0)
                T.insert(0, q, axis_base(q, t0, t1, c2, L));
    } else {
        if (cap[4] >= 0) T.insert(0, -3, 1.0 / (geom.R0 * s0) - 1.0 / (geom.R1 * s1));
        for (int q = -3; q >= -7; q -= 2)
            if (cap[static_cast<std::size_t>(column_of(q - 2))] >= 0)
                T.insert(0, q - 2, downshift_q(T.at(0, q), geom, q));
    }

    for (std::size_t i = 0; i < 8; ++i) {
        if (cap[i] < 1) continue;
        const int q = col_q[i];
        const double denom = (q + 2) * L2;
        const double R1p = powi(geom.R1, q + 2);
        const double R0p = powi(geom.R0, q + 2);
        for (int n = 1; n <= cap[i]; ++n) {
            double t = (R1p - (n == 1 ? R0p : 0.0)) / denom;
            t -= geom.u0 / L2 * T.at(n - 1, q);
            if (n >= 2) t -= static_cast<double>(n - 1) / denom * T.at(n - 2, q + 2);
            T.insert(n, q, t);
        }
    }
    return T;
}

TnqTable build_table(const Vec3 &xhat, const Segment &seg, double eps, std::span<const TnqIndex> need) {
    return build_table(SegmentGeometry(xhat, seg, eps), need);
}

} // namespace stokeseg
