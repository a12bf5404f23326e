#include "spintri/solver.hpp"

#include <cmath>

#include "spintri/errors.hpp"

namespace spintri {

Solved solve_any(const Couplings& j, const SpinConfiguration& s0) {
    if (!is_valid_configuration(s0)) throw DomainError("spin vectors must have unit length");
    Solved out;
    out.label = classify_case(j, s0);
    switch (out.label.kind) {
        case CaseKind::Generic: {
            std::shared_ptr<const ExternalSolution> sol = solve(j, s0);
            out.generic = sol;
            out.period = sol->period();
            out.evaluate = [sol](double t) { return sol->evaluate(t); };
            break;
        }
        case CaseKind::Isosceles: {
            try {
                auto iso = std::make_shared<IsoscelesSolution>(j, s0);
                double w = iso->params().omega12;
                out.period = w != 0.0 ? 2.0 * M_PI / std::fabs(w) : 0.0;
                out.evaluate = [iso](double t) { return (*iso)(t); };
            } catch (const DegenerateError&) {
                out.label.kind = CaseKind::FaceCase;
                auto fc = std::make_shared<FaceCaseSolution>(j, s0, out.label.index);
                out.evaluate = [fc](double t) { return (*fc)(t); };
            }
            break;
        }
        case CaseKind::FaceCase: {
            auto fc = std::make_shared<FaceCaseSolution>(j, s0, out.label.index);
            out.evaluate = [fc](double t) { return (*fc)(t); };
            break;
        }
        case CaseKind::Equilateral: {
            auto eq = std::make_shared<EquilateralSolution>(j, s0);
            out.evaluate = [eq](double t) { return (*eq)(t); };
            break;
        }
        case CaseKind::StationaryGram:
        case CaseKind::ZeroTotalSpin: {
            auto sg = std::make_shared<StationaryGramSolution>(j, s0);
            out.evaluate = [sg](double t) { return (*sg)(t); };
            break;
        }
        case CaseKind::AperiodicSeparatrix: {
            auto sp = std::make_shared<SeparatrixSolution>(j, s0, out.label.index);
            out.evaluate = [sp](double t) { return (*sp)(t); };
            break;
        }
        case CaseKind::Collinear: {
            SpinConfiguration s = s0;
            out.evaluate = [s](double) { return s; };
            break;
        }
    }
    return out;
}

}  // namespace spintri
