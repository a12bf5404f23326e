#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "spintri/errors.hpp"
#include "spintri/json_io.hpp"

using namespace spintri;
using namespace fixtures;

namespace {

SpinConfiguration all_up() {
    SpinConfiguration s;
    s << 0, 0, 0, 0, 0, 0, 1, 1, 1;
    return s;
}

double brute_energy(const SpinConfiguration& s, const Couplings& j) {
    return j.j1 * s.col(1).dot(s.col(2)) + j.j2 * s.col(2).dot(s.col(0)) + j.j3 * s.col(0).dot(s.col(1));
}

}  // namespace

TEST_CASE("hamiltonian") {
    CHECK(hamiltonian(all_up(), {1, 1, 1}) == doctest::Approx(3.0));
    SpinConfiguration cg1 = standard_config({-0.5, -0.5, 1.0, 0.0});
    CHECK(hamiltonian(cg1, example_couplings()) == doctest::Approx(example_epsilon()).epsilon(1e-12));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        SpinConfiguration s = random_config(rng);
        Couplings j = random_couplings(rng);
        CHECK(hamiltonian(s, j) == doctest::Approx(brute_energy(s, j)).epsilon(1e-13));
    }
}

TEST_CASE("total spin and conserved values") {
    ConservedValues cv = conserved_values(all_up(), {1, 2, 3});
    CHECK(cv.sigma == doctest::Approx(3.0));
    CHECK(cv.s_len == doctest::Approx(3.0));
    CHECK(cv.sigma3 == doctest::Approx(3.0));

    SpinConfiguration cg2 = standard_config({0.0, 1 / kSqrt2, -1 / kSqrt2, 0.0});
    CHECK(std::fabs(h1(cg2)) < 1e-12);
    CHECK(total_spin(cg2).norm() == doctest::Approx(std::sqrt(3.0)));

    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        SpinConfiguration s = random_config(rng);
        CHECK(std::fabs(total_spin(s).squaredNorm() - (3 + 2 * h1(s))) < 1e-10);
    }
}

TEST_CASE("torque field") {
    CHECK(max_abs(torque_field(all_up(), {1, 2, 3})) == 0.0);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        SpinConfiguration s = random_config(rng);
        Couplings j = random_couplings(rng);
        Mat3 tf = torque_field(s, j);
        CHECK(tf.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
        // H is constant along the flow
        double h = 1e-6;
        double dh = (hamiltonian(s + h * tf, j) - hamiltonian(s - h * tf, j)) / (2 * h);
        CHECK(std::fabs(dh) <= 1e-6);
        if (i < 100) {
            Rotation r = random_rotation(rng);
            CHECK(max_abs(torque_field(r.r * s, j) - r.r * tf) < 1e-12);
        }
    }
}

TEST_CASE("gram") {
    GramPoint g = gram(Mat3::Identity());
    CHECK(g.u == 0.0);
    CHECK(g.v == 0.0);
    CHECK(g.w == 0.0);
    CHECK(g.delta == 1.0);
    GramPoint up = gram(all_up());
    CHECK(up.u == 1.0);
    CHECK(up.delta == 0.0);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        SpinConfiguration s = random_config(rng);
        GramPoint p = gram(s);
        CHECK(std::fabs(p.delta * p.delta - (s.transpose() * s).determinant()) < 1e-10);
        CHECK(std::fabs(p.delta * p.delta - p.det()) < 1e-10);
    }
}

TEST_CASE("standard configuration") {
    SpinConfiguration r = standard_config({0, 0, 0, 1});
    Mat3 expected;
    expected << std::sqrt(2.0 / 3), -1 / std::sqrt(6.0), -1 / std::sqrt(6.0), 0, 1 / kSqrt2, -1 / kSqrt2,
        1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0);
    CHECK(max_abs(r - expected) < 1e-14);

    SpinConfiguration c = standard_config({-0.5, -0.5, 1.0, 0.0});
    CHECK(is_valid_configuration(c));
    CHECK((total_spin(c) - Vec3(0, 0, std::sqrt(3.0))).norm() < 1e-12);
    CHECK(std::fabs(c.determinant()) < 1e-12);

    // face interior point (1, v, v, 0)
    SpinConfiguration f = standard_config({1.0, 0.3, 0.3, 0.0});
    GramPoint gf = gram(f);
    CHECK(gf.u == doctest::Approx(1.0));
    CHECK(gf.v == doctest::Approx(0.3));
    CHECK(gf.w == doctest::Approx(0.3));

    // critical limit: v = w, u = 2v^2 - 1, delta = 0
    double v = 0.4;
    SpinConfiguration k = standard_config({2 * v * v - 1, v, v, 0.0});
    CHECK(k(1, 1) == doctest::Approx(std::sqrt(1 - v * v)));
    CHECK(k(1, 2) == doctest::Approx(-std::sqrt(1 - v * v)));
    GramPoint gk = gram(k);
    CHECK(gk.u == doctest::Approx(2 * v * v - 1));
    CHECK(gk.v == doctest::Approx(v));

    CHECK_THROWS_AS(standard_config({-0.5, -0.5, -0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(standard_config({1.0, -1.0, -1.0, 0.0}), DomainError);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        GramPoint g = random_gram(rng);
        if (3 + 2 * (g.u + g.v + g.w) < 1e-6) continue;
        SpinConfiguration s = standard_config(g);
        GramPoint back = gram(s);
        CHECK(std::fabs(back.u - g.u) < 1e-9);
        CHECK(std::fabs(back.v - g.v) < 1e-9);
        CHECK(std::fabs(back.w - g.w) < 1e-9);
        CHECK(std::fabs(back.delta - g.delta) < 1e-9);
        Vec3 S = total_spin(s);
        CHECK((S - Vec3(0, 0, std::sqrt(3 + 2 * (g.u + g.v + g.w)))).norm() < 1e-9);
    }
}

TEST_CASE("standard configuration derivative") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
        GramPoint g = random_gram(rng);
        GramPoint d{0.3, -0.2, 0.1, 0.05};
        double h = 1e-6;
        GramPoint gp{g.u + h * d.u, g.v + h * d.v, g.w + h * d.w, g.delta + h * d.delta};
        GramPoint gm{g.u - h * d.u, g.v - h * d.v, g.w - h * d.w, g.delta - h * d.delta};
        Mat3 fd = (standard_config(gp) - standard_config(gm)) / (2 * h);
        CHECK(max_abs(fd - standard_config_derivative(g, d)) < 1e-6);
    }
}

TEST_CASE("oriented polar decomposition") {
    std::mt19937_64 rng(7);
    Mat3 spd;
    spd << 1.0, 0.2, 0.1, 0.2, 1.0, 0.3, 0.1, 0.3, 1.0;
    SpinConfiguration s = spd.colwise().normalized();
    PolarDecomposition pd0 = oriented_polar(s.transpose() * s);
    CHECK(max_abs(pd0.rotation.r - Mat3::Identity()) < 1e-10);

    for (int i = 0; i < 100; ++i) {
        SpinConfiguration a = random_config(rng);
        Rotation r0 = random_rotation(rng);
        Mat3 sq = oriented_polar(a).p;
        if (a.determinant() < 0) sq = -sq;
        PolarDecomposition pd = oriented_polar(r0.r * sq);
        CHECK(max_abs(pd.rotation.r - r0.r) < 1e-10);
        PolarDecomposition pa = oriented_polar(a);
        CHECK(pa.rotation.r.determinant() == doctest::Approx(1.0));
        CHECK(max_abs(pa.rotation.r * pa.p - a) < 1e-10);
        if (a.determinant() < 0) CHECK(pa.p.determinant() < 0);
    }
    // rank two
    SpinConfiguration planar = standard_config({-0.5, -0.5, 1.0, 0.0});
    Rotation r1 = random_rotation(rng);
    PolarDecomposition pp = oriented_polar(r1.r * planar);
    CHECK(max_abs(pp.rotation.r * pp.p - r1.r * planar) < 1e-10);
    CHECK(pp.rotation.r.determinant() == doctest::Approx(1.0));
    CHECK_THROWS_AS(oriented_polar(all_up()), CollinearError);
}

TEST_CASE("isotropy and rotations") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        SpinConfiguration s = random_config(rng);
        Couplings j = random_couplings(rng);
        Rotation r = random_rotation(rng);
        CHECK(hamiltonian(r.r * s, j) == doctest::Approx(hamiltonian(s, j)).epsilon(1e-12));
        CHECK(hamiltonian(-s, j) == doctest::Approx(hamiltonian(s, j)).epsilon(1e-12));
        CHECK(max_abs(r.r.transpose() * r.r - Mat3::Identity()) < 1e-12);
        CHECK(r.r.determinant() == doctest::Approx(1.0));
        Rotation k = best_rotation(s, r.r * s);
        CHECK(max_abs(k.r - r.r) < 1e-10);
    }
}

TEST_CASE("json round trip") {
    GramPoint g{0.1, 0.2, -0.3, 0.4};
    nlohmann::json jg = g;
    CHECK(jg["u"] == 0.1);
    CHECK(jg["delta"] == 0.4);
    GramPoint back = jg.get<GramPoint>();
    CHECK(back.w == -0.3);

    SpinConfiguration s = Mat3::Identity();
    s(0, 1) = 0.5;
    nlohmann::json js = to_json_matrix(s);
    CHECK(js[0][1] == 0.5);
    CHECK(max_abs(matrix_from_json(js) - s) == 0.0);

    ConservedValues cv = ConservedValues::make(1.5, 0.0, 1.0);
    nlohmann::json jc = cv;
    CHECK(jc["epsilon"] == 1.5);
    CHECK(jc["sigma3"] == 1.0);
}
