#include "doctest.h"

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spintri/errors.hpp"
#include "spintri/special_functions.hpp"

using namespace spintri;

namespace {

double k_by_quadrature(double m) {
    auto f = [m](double th) { return 1.0 / std::sqrt(1.0 - m * std::sin(th) * std::sin(th)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, M_PI / 2, 12, 1e-14);
}

const double s2 = std::sqrt(2.0);
const CubicRoots example_roots{(-14 - 9 * s2) / 48, -1.0 / 24, (16 + 9 * s2) / 48};
const double example_g2 = (4680 + 3240 * s2) / 6912;
const double example_g3 = (193 + 135 * s2) / 6912;

}  // namespace

TEST_CASE("complete elliptic K") {
    CHECK(complete_elliptic_k(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
    double m = (2 + 3 * s2) / 14;
    CHECK(complete_elliptic_k(m) == doctest::Approx(k_by_quadrature(m)).epsilon(1e-13));
    CHECK(complete_elliptic_k(m) == doctest::Approx(1.8107699102594381).epsilon(1e-14));
    double big = complete_elliptic_k(0.999999);
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(8.294051463601061).epsilon(1e-12));
    CHECK_THROWS_AS(complete_elliptic_k(1.0), DomainError);
    CHECK_THROWS_AS(complete_elliptic_k(-0.1), DomainError);
}

TEST_CASE("AGM agrees with quadrature over the parameter range") {
    for (int i = 1; i <= 99; ++i) {
        double m = 0.01 * i;
        CHECK(std::fabs(complete_elliptic_k(m) / k_by_quadrature(m) - 1.0) < 1e-11);
    }
}

TEST_CASE("jacobi sn") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pm(0.0, 0.999);
    for (int i = 0; i < 50; ++i) {
        double m = pm(rng);
        CHECK(jacobi_sn(0.0, m) == 0.0);
        CHECK(jacobi_sn(complete_elliptic_k(m), m) == doctest::Approx(1.0).epsilon(1e-12));
        // identities sn^2 + cn^2 = 1, dn^2 + m sn^2 = 1, derivative of sn is cn dn
        double u = 10.0 * (pm(rng) - 0.5);
        JacobiTriple j = jacobi_elliptic(u, m);
        CHECK(j.sn * j.sn + j.cn * j.cn == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(j.dn * j.dn + m * j.sn * j.sn == doctest::Approx(1.0).epsilon(1e-14));
        double h = 1e-5;
        double d = (jacobi_sn(u + h, m) - jacobi_sn(u - h, m)) / (2 * h);
        CHECK(d == doctest::Approx(j.cn * j.dn).epsilon(1e-8));
    }
    for (double u : {-3.0, 0.3, 1.7, 12.5}) CHECK(jacobi_sn(u, 0.0) == doctest::Approx(std::sin(u)).epsilon(1e-14));
    CHECK_THROWS_AS(jacobi_sn(0.5, 1.0), DomainError);
}

TEST_CASE("depressed cubic") {
    CubicRoots r = solve_depressed_cubic(example_g2, example_g3);
    CHECK(r.x1 == doctest::Approx(example_roots.x1).epsilon(1e-13));
    CHECK(r.x2 == doctest::Approx(example_roots.x2).epsilon(1e-13));
    CHECK(r.x3 == doctest::Approx(example_roots.x3).epsilon(1e-13));

    CubicRoots z = solve_depressed_cubic(0.0, 0.0);
    CHECK(z.x1 == 0.0);
    CHECK(z.x3 == 0.0);

    CubicRoots q = solve_depressed_cubic(4.0, 0.0);
    CHECK(q.x1 == doctest::Approx(-1.0));
    CHECK(std::fabs(q.x2) < 1e-15);
    CHECK(q.x3 == doctest::Approx(1.0));

    CubicRoots d = solve_depressed_cubic(12.0, -8.0);  // roots -2, 1, 1
    CHECK(d.x1 == doctest::Approx(-2.0));
    CHECK(d.x2 == 1.0);
    CHECK(d.x3 == 1.0);
    CHECK(roots_degenerate(d));

    CHECK_THROWS_AS(solve_depressed_cubic(-1.0, 1.0), ComplexRootsError);
}

TEST_CASE("cubic roots are sorted, sum to zero and satisfy the polynomial") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    int checked = 0;
    while (checked < 1000) {
        double g2 = c(rng) * 5.0, g3 = c(rng);
        if (g2 * g2 * g2 - 27 * g3 * g3 <= 0.0) continue;
        ++checked;
        CubicRoots r = solve_depressed_cubic(g2, g3);
        CHECK(r.x1 <= r.x2);
        CHECK(r.x2 <= r.x3);
        CHECK(std::fabs(r.x1 + r.x2 + r.x3) < 1e-12);
        double scale = std::max({1.0, std::fabs(g2), std::fabs(g3)});
        for (double x : {r.x1, r.x2, r.x3}) CHECK(std::fabs(4 * x * x * x - g2 * x - g3) <= 1e-10 * scale);
    }
}

TEST_CASE("half periods") {
    HalfPeriods p = half_periods(example_roots);
    CHECK(p.omega1 == doctest::Approx(3.3693042 / 2).epsilon(1e-7));
    CHECK(p.omega3_im == doctest::Approx(1.77031).epsilon(1e-5));
    HalfPeriods q = half_periods({-1.0, 0.0, 1.0});
    CHECK(q.omega1 == doctest::Approx(k_by_quadrature(0.5) / std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(half_periods({-1.0, -1.0, 2.0}), DegenerateRootsError);

    // harmonic limit x2 -> x1
    double a = -0.5, eps = 1e-7;
    CubicRoots near{a - eps, a + eps, -2 * a};
    CHECK(half_periods(near).omega1 == doctest::Approx(M_PI / std::sqrt(12 * std::fabs(a))).epsilon(1e-6));
}

TEST_CASE("shifted weierstrass function") {
    ShiftedWeierstrass wp(example_roots);
    const double T = wp.period();
    WpValue a = wp(0.0);
    CHECK(a.x == doctest::Approx(example_roots.x1).epsilon(1e-15));
    CHECK(a.xdot == 0.0);
    WpValue b = wp(T / 2);
    CHECK(b.x == doctest::Approx(example_roots.x2).epsilon(1e-12));
    CHECK(std::fabs(b.xdot) < 1e-12);

    const double scale = std::max({1.0, example_g2, example_g3});
    for (int i = 0; i < 200; ++i) {
        double t = 2.0 * T * i / 199.0;
        WpValue p = wp(t);
        double pi = 4 * p.x * p.x * p.x - example_g2 * p.x - example_g3;
        CHECK(std::fabs(p.xdot * p.xdot - pi) <= 1e-9 * scale);
        CHECK(p.x >= example_roots.x1 - 1e-14);
        CHECK(p.x <= example_roots.x2 + 1e-14);
        CHECK(std::fabs(wp(t + T).x - p.x) <= 1e-10);
    }
    WpValue h = weierstrass_p_shifted(0.5, example_roots);
    CHECK(std::fabs(h.xdot * h.xdot - (4 * h.x * h.x * h.x - example_g2 * h.x - example_g3)) < 1e-10);
    // xdot is the derivative of x
    double d = (wp(0.7 + 1e-6).x - wp(0.7 - 1e-6).x) / 2e-6;
    CHECK(d == doctest::Approx(wp(0.7).xdot).epsilon(1e-8));
}
