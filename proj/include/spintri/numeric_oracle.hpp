#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "spintri/core_model.hpp"

namespace spintri {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    bool renormalize = false;
    double monitor_interval = 0.0;  // 0 records an audit at every accepted step
    double fixed_step = 0.0;        // > 0 disables error control (order studies)
};

// Zeeman field B(t) e.
struct Field {
    std::function<double(double)> b;
    Vec3 e = Vec3::UnitZ();
};

struct AuditSample {
    double t = 0.0;
    double energy = 0.0;
    Vec3 total_spin = Vec3::Zero();
    Vec3 norms = Vec3::Ones();
    double gram_identity = 0.0;  // |delta^2 - det G|
};

class Trajectory {
public:
    std::vector<double> times;
    std::vector<SpinConfiguration> states;
    std::vector<AuditSample> audits;

    // Dense output over the integrated span (either time direction).
    SpinConfiguration at(double t) const;
    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }

    struct Segment {
        double t0 = 0.0;
        double h = 0.0;
        std::array<Mat3, 5> rcont;
    };
    std::vector<Segment> segments;
};

Trajectory integrate(const Couplings& j, const SpinConfiguration& s0, double t_end,
                     const IntegratorConfig& cfg = {}, const std::optional<Field>& field = std::nullopt);

struct AuditReport {
    double energy = 0.0;
    Vec3 total_spin = Vec3::Zero();
    Vec3 norms = Vec3::Zero();
    double gram_identity = 0.0;

    double worst() const;
};

// Maximum deviations from the first sample.
AuditReport audit(const Trajectory& traj, const Couplings& j);

AuditSample audit_sample(double t, const SpinConfiguration& s, const Couplings& j);

}  // namespace spintri
