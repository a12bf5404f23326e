#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "spintri/errors.hpp"
#include "spintri/external_dynamics.hpp"
#include "spintri/numeric_oracle.hpp"

using namespace spintri;
using namespace fixtures;

namespace {

// All spins precess about S at rate J|S|.
SpinConfiguration equilateral_exact(double jj, const SpinConfiguration& s0, double t) {
    Vec3 s = total_spin(s0);
    double n = s.norm();
    Rotation r = Rotation::axis_angle(s / n, jj * n * t);
    return r.r * s0;
}

SpinConfiguration equilateral_start() {
    SpinConfiguration s;
    s.col(0) = Vec3(1, 0, 0);
    s.col(1) = Vec3(0.3, 0.9, 0.1).normalized();
    s.col(2) = Vec3(-0.2, 0.4, 0.8).normalized();
    return s;
}

}  // namespace

TEST_CASE("equilateral couplings follow the uniform precession") {
    const double jj = 0.8;
    Couplings j{jj, jj, jj};
    SpinConfiguration s0 = equilateral_start();
    double period = 2 * M_PI / (jj * total_spin(s0).norm());
    Trajectory tr = integrate(j, s0, 5 * period, {1e-12, 1e-14});
    for (int k = 0; k <= 50; ++k) {
        double t = 5 * period * k / 50.0;
        CHECK(max_abs(tr.at(t) - equilateral_exact(jj, s0, t)) <= 1e-8);
    }
    CHECK(max_abs(tr.states.back() - equilateral_exact(jj, s0, tr.times.back())) <= 1e-8);
}

TEST_CASE("example trajectory agrees with the semi-analytic solution") {
    Couplings j = example_couplings();
    WeierstrassData wd = reduce(j, example_epsilon(), 0.0);
    SpinConfiguration s0 = standard_config(internal_state(0.25 * wd.period(), wd));
    auto sol = solve(j, s0);
    double t_end = sol->period();
    Trajectory tr = integrate(j, s0, t_end, {1e-10, 1e-12});
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        double t = t_end * k / 200.0;
        worst = std::max(worst, max_abs(tr.at(t) - sol->evaluate(t)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("conservation over ten periods") {
    Couplings j = example_couplings();
    WeierstrassData wd = reduce(j, example_epsilon(), 0.0);
    SpinConfiguration s0 = standard_config(internal_state(0.1 * wd.period(), wd));
    IntegratorConfig cfg{1e-10, 1e-12};
    cfg.monitor_interval = wd.period() / 20.0;
    Trajectory tr = integrate(j, s0, 10 * wd.period(), cfg);
    CHECK(tr.audits.size() == 201);
    AuditReport rep = audit(tr, j);
    CHECK(rep.energy <= 1e-8);
    CHECK(rep.total_spin.maxCoeff() <= 1e-8);
    CHECK(rep.norms.maxCoeff() <= 1e-8);
    CHECK(rep.gram_identity <= 1e-8);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        Instance in = random_generic(rng);
        Trajectory r = integrate(in.j, in.s0, 20.0, cfg);
        CHECK(audit(r, in.j).norms.maxCoeff() <= 1e-8);
    }
}

TEST_CASE("loose tolerance is flagged by the audit") {
    Couplings j = example_couplings();
    std::mt19937_64 rng(8);
    SpinConfiguration s0 = random_config(rng);
    IntegratorConfig loose{1e-3, 1e-3};
    Trajectory tr = integrate(j, s0, 50.0, loose);
    CHECK(audit(tr, j).worst() > 1e-6);
}

TEST_CASE("stationary state stays put") {
    // all spins aligned is a fixed point
    SpinConfiguration s;
    for (int mu = 0; mu < 3; ++mu) s.col(mu) = Vec3(0, 0, 1);
    Couplings j{0.3, -0.7, 1.1};
    Trajectory tr = integrate(j, s, 10.0);
    CHECK(audit(tr, j).worst() <= 1e-12);
    CHECK(max_abs(tr.states.back() - s) <= 1e-12);
}

TEST_CASE("fixed-step order is five") {
    const double jj = 1.0;
    Couplings j{jj, jj, jj};
    SpinConfiguration s0 = equilateral_start();
    const double t_end = 4.0;
    SpinConfiguration exact = equilateral_exact(jj, s0, t_end);
    double prev = 0.0;
    for (int level = 0; level < 4; ++level) {
        IntegratorConfig cfg;
        cfg.fixed_step = 0.2 / std::pow(2.0, level);
        double err = max_abs(integrate(j, s0, t_end, cfg).states.back() - exact);
        if (level > 0) CHECK(std::log2(prev / err) >= 4.5);
        prev = err;
    }
}

TEST_CASE("time reversal returns the start") {
    std::mt19937_64 rng(13);
    Instance in = random_generic(rng);
    IntegratorConfig cfg{1e-10, 1e-12};
    Trajectory fwd = integrate(in.j, in.s0, 7.0, cfg);
    Trajectory back = integrate(in.j, fwd.states.back(), -7.0, cfg);
    CHECK(back.times.back() == -7.0);
    CHECK(max_abs(back.states.back() - in.s0) <= 1e-9);
    CHECK(max_abs(back.at(-3.5) - fwd.at(3.5)) <= 1e-9);
}

TEST_CASE("zeeman run matches the rotating frame") {
    Couplings j = example_couplings();
    std::mt19937_64 rng(21);
    SpinConfiguration s0 = random_config(rng);
    Vec3 e = Vec3(0.2, -0.5, 1.0).normalized();
    Field field{[](double t) { return 0.7 + 0.3 * std::sin(2 * t); }, e};
    auto beta_int = [](double t) { return 0.7 * t + 0.15 * (1.0 - std::cos(2 * t)); };
    IntegratorConfig cfg{1e-11, 1e-13};
    Trajectory with = integrate(j, s0, 6.0, cfg, field);
    Trajectory without = integrate(j, s0, 6.0, cfg);
    for (int k = 0; k <= 30; ++k) {
        double t = 0.2 * k;
        SpinConfiguration mapped = Rotation::axis_angle(e, beta_int(t)).r * without.at(t);
        CHECK(max_abs(with.at(t) - mapped) <= 1e-6);
    }
    // the exchange energy is still conserved
    CHECK(audit(with, j).energy <= 1e-8);
}

TEST_CASE("bad input") {
    Couplings j{1, 2, 3};
    SpinConfiguration s = equilateral_start();
    CHECK_THROWS_AS(integrate(j, s, 1.0, {0.0, 1e-12}), DomainError);
    CHECK_THROWS_AS(integrate(j, s, std::nan(""), {}), DomainError);
    Trajectory tr = integrate(j, s, 0.0);
    CHECK(tr.times.size() == 1);
}
