#pragma once

#include <utility>

#include "spintri/core_model.hpp"
#include "spintri/external_dynamics.hpp"

namespace spintri {

struct ActionAngleData {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double omega_3 = 0.0;
    double period = 0.0;
    double alpha_T = 0.0;  // raw
};

// (S - 3, sigma3 - 3)
std::pair<double, double> actions_i2_i3(const ConservedValues& cv);

// Internal period from the roots alone; finite at the energy-range endpoints.
double period_at(const Couplings& j, double sigma, double epsilon);

// 2 pi / sqrt(12 |x_dbl|) at the lower (which = 0) or upper (which = 1) end of the energy range.
double harmonic_period_limit(const Couplings& j, double sigma, int which);

// I1 = (1/2pi) int_{E_min}^{eps} T; I1(E_min) = 0.
double action_i1_integral(const Couplings& j, double sigma, double epsilon);

// alpha(T) continued from E_min across the critical energies.
double smoothed_alpha_at(const Couplings& j, double sigma, double epsilon);

// (1/2pi) sum of the signed areas swept by the averaged orbits over one period.
double action_i1_area(const Couplings& j, double sigma, double epsilon, int samples = 4096);

// (2 pi / T, wrapped alpha(T) / T)
std::pair<double, double> frequencies(const ExternalSolution& sol);

ActionAngleData action_angle(const Couplings& j, const SpinConfiguration& s);

}  // namespace spintri
