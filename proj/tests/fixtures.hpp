#pragma once

#include <cmath>
#include <random>

#include "spintri/core_model.hpp"
#include "spintri/gram_geometry.hpp"

namespace fixtures {

using namespace spintri;

inline const double kSqrt2 = std::sqrt(2.0);

// Worked example: sigma = 0, epsilon = sqrt(2)/4.
inline Couplings example_couplings() { return {-0.5, 0.5 + kSqrt2 / 2.0, kSqrt2 / 2.0}; }
inline double example_epsilon() { return kSqrt2 / 4.0; }

inline Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v(n(rng), n(rng), n(rng));
    return v.normalized();
}

inline SpinConfiguration random_config(std::mt19937_64& rng) {
    SpinConfiguration s;
    for (int mu = 0; mu < 3; ++mu) s.col(mu) = random_unit(rng);
    return s;
}

inline Rotation random_rotation(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(0.0, 2.0 * M_PI);
    return Rotation::axis_angle(random_unit(rng), a(rng));
}

// Rejection sample of the double Gram set.
inline GramPoint random_gram(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (;;) {
        GramPoint g{c(rng), c(rng), c(rng), 0.0};
        double d = g.det();
        if (d <= 0.0) continue;
        g.delta = (c(rng) < 0.0 ? -1.0 : 1.0) * std::sqrt(d);
        return g;
    }
}

inline Couplings random_couplings(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    return {c(rng), c(rng), c(rng)};
}

inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

// Central difference of a trajectory evaluator.
template <typename F>
Mat3 time_derivative(const F& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

// Five-point stencil, fourth order.
template <typename F>
Mat3 time_derivative4(const F& f, double t, double h) {
    return (-f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12.0 * h);
}

}  // namespace fixtures

namespace fixtures {

struct Instance {
    spintri::Couplings j;
    spintri::SpinConfiguration s0;
};

// Random couplings and configuration accepted by the generic classifier.
inline Instance random_generic(std::mt19937_64& rng) {
    for (;;) {
        Instance in{random_couplings(rng), random_config(rng)};
        if (spintri::classify_case(in.j, in.s0).kind == spintri::CaseKind::Generic) return in;
    }
}

}  // namespace fixtures
