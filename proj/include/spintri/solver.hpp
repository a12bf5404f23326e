#pragma once

#include <memory>

#include "spintri/core_model.hpp"
#include "spintri/external_dynamics.hpp"
#include "spintri/gram_geometry.hpp"
#include "spintri/special_cases.hpp"

namespace spintri {

struct Solved {
    CaseLabel label;
    Evaluator evaluate;
    // Internal period; 0 when the Gram point is frozen or the motion is aperiodic.
    double period = 0.0;
    // Set for the generic case only.
    std::shared_ptr<const ExternalSolution> generic;
};

// Classify (j, s0) and build the matching semi-analytic evaluator.
Solved solve_any(const Couplings& j, const SpinConfiguration& s0);

}  // namespace spintri
