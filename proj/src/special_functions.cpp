#include "spintri/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spintri/errors.hpp"

namespace spintri {

namespace {

constexpr double kPi = std::numbers::pi;

void check_parameter(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw DomainError("elliptic parameter must lie in [0,1)");
}

// Descending Landen ladder a_n, c_n with c_n / a_n below rounding.
int agm_ladder(double m, std::array<double, 16>& a, std::array<double, 16>& c) {
    a[0] = 1.0;
    double b = std::sqrt(1.0 - m);
    c[0] = std::sqrt(m);
    int n = 0;
    while (n + 1 < 16 && std::fabs(c[n]) > 1e-17 * a[n]) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    return n;
}

JacobiTriple jacobi_from_ladder(double u, double m, int n, const std::array<double, 16>& a,
                                const std::array<double, 16>& c) {
    double phi = std::ldexp(a[n] * u, n);
    for (int k = n; k > 0; --k) {
        double s = c[k] / a[k] * std::sin(phi);
        phi = 0.5 * (phi + std::asin(std::clamp(s, -1.0, 1.0)));
    }
    JacobiTriple out;
    out.sn = std::sin(phi);
    out.cn = std::cos(phi);
    out.dn = std::sqrt((1.0 - m) + m * out.cn * out.cn);
    return out;
}

double newton_polish(double x, double g2, double g3) {
    double f = 4.0 * x * x * x - g2 * x - g3;
    double df = 12.0 * x * x - g2;
    if (df == 0.0) return x;
    double y = x - f / df;
    double fy = 4.0 * y * y * y - g2 * y - g3;
    return std::fabs(fy) <= std::fabs(f) ? y : x;
}

}  // namespace

double complete_elliptic_k(double m) {
    check_parameter(m);
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < 40 && std::fabs(a - b) > 1e-16 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (a + b);
}

JacobiTriple jacobi_elliptic(double u, double m) {
    check_parameter(m);
    std::array<double, 16> a{}, c{};
    int n = agm_ladder(m, a, c);
    double k4 = 4.0 * complete_elliptic_k(m);
    double ur = u - k4 * std::round(u / k4);
    return jacobi_from_ladder(ur, m, n, a, c);
}

double jacobi_sn(double u, double m) { return jacobi_elliptic(u, m).sn; }

CubicRoots solve_depressed_cubic(double g2, double g3) {
    double disc = g2 * g2 * g2 - 27.0 * g3 * g3;
    double scale = std::max(std::fabs(g2 * g2 * g2), 27.0 * g3 * g3);
    if (scale == 0.0) return {};
    if (disc < -1e-12 * scale) throw ComplexRootsError("cubic has a complex root pair");

    CubicRoots r;
    if (disc <= 0.0) {
        // double root: exact form 2a, -a, -a with a = sign(g3) sqrt(g2/12)
        double a = std::copysign(std::sqrt(std::max(g2, 0.0) / 12.0), g3);
        double lo = std::min(2.0 * a, -a), hi = std::max(2.0 * a, -a);
        if (a > 0.0) r = {lo, lo, hi};
        else r = {lo, hi, hi};
        return r;
    }
    double a = std::sqrt(g2 / 12.0);
    double arg = std::clamp(1.5 * g3 / g2 * std::sqrt(12.0 / g2), -1.0, 1.0);
    double th = std::acos(arg) / 3.0;
    std::array<double, 3> x = {2.0 * a * std::cos(th), 2.0 * a * std::cos(th - 2.0 * kPi / 3.0),
                               2.0 * a * std::cos(th + 2.0 * kPi / 3.0)};
    for (double& xi : x) xi = newton_polish(xi, g2, g3);
    std::sort(x.begin(), x.end());
    return {x[0], x[1], x[2]};
}

bool roots_degenerate(const CubicRoots& r) {
    double tol = 1e-12 * (1.0 + std::fabs(r.x3 - r.x1));
    return (r.x2 - r.x1) <= tol || (r.x3 - r.x2) <= tol;
}

HalfPeriods half_periods(const CubicRoots& r) {
    if (roots_degenerate(r)) throw DegenerateRootsError("half periods need three simple roots");
    double span = r.x3 - r.x1;
    double s = std::sqrt(span);
    return {complete_elliptic_k((r.x2 - r.x1) / span) / s, complete_elliptic_k((r.x3 - r.x2) / span) / s};
}

ShiftedWeierstrass::ShiftedWeierstrass(const CubicRoots& r) : roots_(r) {
    if (roots_degenerate(r)) throw DegenerateRootsError("shifted p needs three simple roots");
    double span = r.x3 - r.x1;
    m_ = (r.x2 - r.x1) / span;
    scale_ = std::sqrt(span);
    quarter_ = complete_elliptic_k(m_);
    period_ = 2.0 * quarter_ / scale_;
    levels_ = agm_ladder(m_, a_, c_);
}

JacobiTriple ShiftedWeierstrass::jacobi(double u) const {
    double k4 = 4.0 * quarter_;
    double ur = u - k4 * std::round(u / k4);
    return jacobi_from_ladder(ur, m_, levels_, a_, c_);
}

WpValue ShiftedWeierstrass::operator()(double t) const {
    JacobiTriple j = jacobi(t * scale_);
    double d = roots_.x2 - roots_.x1;
    return {roots_.x1 + d * j.sn * j.sn, 2.0 * d * scale_ * j.sn * j.cn * j.dn};
}

WpValue weierstrass_p_shifted(double t, const CubicRoots& r) { return ShiftedWeierstrass(r)(t); }

}  // namespace spintri
