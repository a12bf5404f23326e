#pragma once

#include <memory>
#include <vector>

#include "spintri/core_model.hpp"
#include "spintri/internal_dynamics.hpp"

namespace spintri {

// Cumulative rotation angle about the standard-frame total spin, tabulated over one period.
class AlphaTable {
public:
    AlphaTable() = default;
    AlphaTable(const WeierstrassData& wd, int nodes_per_period = 4096);

    double operator()(double t) const;
    double alpha_T() const { return alpha_T_; }
    double period() const { return period_; }
    int nodes() const { return static_cast<int>(alpha_.size()) - 1; }

private:
    double period_ = 0.0;
    double alpha_T_ = 0.0;
    std::vector<double> alpha_;
    std::vector<double> rate_;
};

struct OmegaEvaluator {
    const WeierstrassData& wd;
    double delta_switch = 0.0;

    explicit OmegaEvaluator(const WeierstrassData& wd);
    double operator()(double t) const;
    double full(const GramPoint& g) const;
    double limit(const GramPoint& g) const;
};

double max_abs_delta(const WeierstrassData& wd);

// d alpha / dt at time t of the standard trajectory (t = 0 at x = x1).
double omega_dot_alpha(double t, const WeierstrassData& wd);

// Raw alpha(T) by adaptive quadrature, no table.
double alpha_period(const WeierstrassData& wd);

class ExternalSolution {
public:
    ExternalSolution(WeierstrassData wd, Rotation alignment, double t_init);
    ExternalSolution(const ExternalSolution&) = delete;
    ExternalSolution& operator=(const ExternalSolution&) = delete;

    const WeierstrassData& wd() const { return wd_; }
    const Rotation& alignment_rotation() const { return alignment_; }
    double t_init() const { return t_init_; }
    double period() const { return wd_.period(); }
    double alpha_T() const { return table_.alpha_T(); }
    // Principal representative of alpha(T) in (-pi, pi].
    double alpha_T_wrapped() const;

    // Cumulative angle of the standard trajectory, alpha(0) = 0.
    double alpha(double t) const { return table_(t); }
    GramPoint internal(double t) const { return internal_state(t + t_init_, wd_); }
    SpinConfiguration evaluate(double t) const;
    // Rotation Z(t) of the standard-frame solution.
    Rotation z(double t) const;

private:
    WeierstrassData wd_;
    Rotation alignment_;
    double t_init_ = 0.0;
    AlphaTable table_;
};

std::unique_ptr<ExternalSolution> solve(const Couplings& j, const SpinConfiguration& s0);

// Phase on the standard trajectory whose Gram point matches g, in [0, T).
double find_phase(const WeierstrassData& wd, const GramPoint& g);

struct FloquetData {
    double f = 0.0;
    Rotation z_t;
    double reconstruction_error = 0.0;
};

FloquetData floquet_monodromy(const ExternalSolution& sol);

struct AlphaSweepRow {
    double epsilon = 0.0;
    double raw = 0.0;
    double smoothed = 0.0;
};

std::vector<AlphaSweepRow> smoothed_alpha_T(const Couplings& j, double sigma, const std::vector<double>& eps_grid);

double wrap_angle(double a);

}  // namespace spintri
