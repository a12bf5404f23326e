#pragma once

#include <functional>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "spintri/core_model.hpp"

namespace spintri {

using Evaluator = std::function<SpinConfiguration(double)>;

// Two equal couplings J on the pair (a, b), the odd spin k carries J_k.
struct IsoscelesParams {
    double alpha_p = 0.0;  // (1 + u + v) / S, cosine between s_k and S
    double beta_p = 0.0;   // |s_a - s_b|
    double r12 = 0.0;      // |s_a + s_b|
    double omega12 = 0.0;  // (J_k - J) r12
    double s_len = 0.0;
    double j_pair = 0.0;
    double j_odd = 0.0;
    int odd = 2;
};

// Coplanar start with S along E3 and the odd spin in the 1-3 plane (odd = 2 labels s3).
SpinConfiguration isosceles_initial(double s_len, double alpha_p);

class IsoscelesSolution {
public:
    IsoscelesSolution(const Couplings& j, const SpinConfiguration& s0);
    const IsoscelesParams& params() const { return p_; }
    SpinConfiguration operator()(double t) const;

private:
    IsoscelesParams p_;
    SpinConfiguration s0_;
    Vec3 axis_ = Vec3::UnitZ();  // S direction
    Vec3 pair_sum_ = Vec3::Zero();
};

class EquilateralSolution {
public:
    EquilateralSolution(const Couplings& j, const SpinConfiguration& s0);
    SpinConfiguration operator()(double t) const;

private:
    double rate_ = 0.0;
    Vec3 axis_ = Vec3::UnitZ();
    SpinConfiguration s0_;
};

// s_a = -s_b rotating about the fixed s_k at the pair coupling.
class FaceCaseSolution {
public:
    // Normal form: J1 = J2 = J, s3 = E3, s1 = -s2 at height gamma.
    FaceCaseSolution(const Couplings& j, double gamma);
    FaceCaseSolution(const Couplings& j, const SpinConfiguration& s0, int odd);
    SpinConfiguration operator()(double t) const;

private:
    double rate_ = 0.0;
    Vec3 axis_ = Vec3::UnitZ();
    SpinConfiguration s0_;
};

// Rigid rotation of a relative (anti-)ground state.
class StationaryGramSolution {
public:
    StationaryGramSolution(const Couplings& j, const SpinConfiguration& s0);
    SpinConfiguration operator()(double t) const;
    double omega() const { return omega_; }
    const Vec3& axis() const { return axis_; }
    // max difference between the three angular-velocity formulas
    double omega_spread() const { return spread_; }
    // in-plane angles of the framed start, sum of sines zero
    const Vec3& phi() const { return phi_; }

private:
    double omega_ = 0.0;
    double spread_ = 0.0;
    Vec3 axis_ = Vec3::UnitZ();
    Vec3 phi_ = Vec3::Zero();
    SpinConfiguration s0_;
};

// Separatrix in normal form J = (lambda, 1, 0), t = 0 at the coplanar turning point.
class AperiodicSolution {
public:
    explicit AperiodicSolution(double lambda);
    SpinConfiguration operator()(double t) const;
    double lambda() const { return lambda_; }
    double gamma() const { return gamma_; }
    double x1() const { return -2.0 / 3.0 * gamma_ * gamma_; }
    double x2() const { return gamma_ * gamma_ / 3.0; }
    double x(double t) const;

private:
    double lambda_;
    double gamma_;
};

// General separatrix instance mapped onto the normal form.
class SeparatrixSolution {
public:
    SeparatrixSolution(const Couplings& j, const SpinConfiguration& s0, int limit_index);
    SpinConfiguration operator()(double t) const;
    const AperiodicSolution& normal_form() const { return normal_; }

    struct NormalMap {
        AperiodicSolution normal;
        std::array<int, 3> perm;  // normal-form slot k holds spin perm[k]
        double scale;
        double shift;
    };

private:
    SeparatrixSolution(NormalMap m, const SpinConfiguration& s0);

    AperiodicSolution normal_;
    std::array<int, 3> perm_;
    double scale_;
    double shift_;
    double tau0_ = 0.0;
    Rotation align_;
};

enum class StationaryKind { CoplanarCritical, Collinear, TwoSpin };

struct StationaryState {
    SpinConfiguration config;
    double energy = 0.0;
    StationaryKind kind = StationaryKind::Collinear;
    int index = -1;  // e_index for collinear states
};

// Coplanar critical Gram point for nonzero couplings, if it lies in the Gram set.
std::optional<GramPoint> coplanar_critical_gram(const Couplings& j);

std::vector<StationaryState> stationary_states(const Couplings& j);

// s_B(t) = R(e, int_0^t B) s'(t)
class MagneticFrame {
public:
    MagneticFrame(Evaluator zero_field, std::function<double(double)> b, const Vec3& e);
    SpinConfiguration operator()(double t) const;
    double field_integral(double t) const;

private:
    Evaluator base_;
    std::function<double(double)> b_;
    Vec3 e_;
    mutable std::mutex mu_;
    mutable std::map<double, double> cache_;
};

// Mean of a periodic field over one period.
double field_mean(const std::function<double(double)>& b, double period);

// Target couplings scale * j + shift (1,1,1).
struct CouplingReduction {
    Couplings source;
    Couplings target;
    double shift = 0.0;
    double scale = 1.0;

    // Solution for the target built from a solution for the source.
    Evaluator map(Evaluator source_solution) const;
};

CouplingReduction coupling_reductions(const Couplings& j, double shift, double scale);

}  // namespace spintri
