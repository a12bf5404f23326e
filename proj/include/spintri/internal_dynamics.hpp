#pragma once

#include <optional>

#include "spintri/core_model.hpp"
#include "spintri/special_functions.hpp"

namespace spintri {

// Affine reduction x = x0 + g u with v = v0 + v1 u, w = w0 + w1 u on the line L,
// and the invariants of Pi(x) = g^2 (J3-J2)^2 det G = 4x^3 - g2 x - g3.
struct Reduction {
    double g = 0.0;
    double x0 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;
    double v0 = 0.0, v1 = 0.0;
    double w0 = 0.0, w1 = 0.0;
    double consistency_residual = 0.0;  // (|c3 - 4| + |c2|) relative to the coefficient scale

    double u_of_x(double x) const { return (x - x0) / g; }
    double x_of_u(double u) const { return x0 + g * u; }
    double pi(double x) const { return 4.0 * x * x * x - g2 * x - g3; }
    double discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
};

// Needs J2 != J3 and J1 distinct from both; no classification check.
Reduction reduction_invariants(const Couplings& j, double epsilon, double sigma);

struct WeierstrassData {
    Couplings j;
    double epsilon = 0.0;
    double sigma = 0.0;
    double g = 0.0;
    double x0 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;
    double v0 = 0.0, v1 = 0.0;
    double w0 = 0.0, w1 = 0.0;
    CubicRoots roots;
    HalfPeriods periods;
    std::optional<ShiftedWeierstrass> wp;

    double period() const { return 2.0 * periods.omega1; }
    double pi(double x) const { return 4.0 * x * x * x - g2 * x - g3; }
    GramPoint gram_at(double x, double xdot) const;
};

WeierstrassData reduce(const Couplings& j, double epsilon, double sigma);

GramPoint internal_state(double t, const WeierstrassData& wd);
GramPoint internal_state(double t, const WeierstrassData& wd, const Couplings& j, double epsilon,
                         double sigma);

struct InternalRates {
    double udot = 0.0;
    double vdot = 0.0;
    double wdot = 0.0;
    double deltadot = 0.0;
};

InternalRates internal_rates(const GramPoint& gp, const Couplings& j);

}  // namespace spintri
