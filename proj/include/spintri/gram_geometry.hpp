#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spintri/core_model.hpp"

namespace spintri {

enum class Membership { Interior, Boundary, Singular, Outside };

struct MembershipResult {
    Membership kind = Membership::Outside;
    int singular_index = -1;  // 0..3 for e0..e3 when kind == Singular
};

enum class CaseKind {
    Generic,
    Isosceles,
    Equilateral,
    StationaryGram,
    AperiodicSeparatrix,
    FaceCase,
    Collinear,
    ZeroTotalSpin
};

struct CaseLabel {
    CaseKind kind = CaseKind::Generic;
    // Isosceles and FaceCase: index (0,1,2) of the coupling that differs.
    // AperiodicSeparatrix: index of the collinear limit point e_{n}, n = 1..3.
    int index = -1;

    std::string name() const;
};

struct EnergyRange {
    double e_min = 0.0;
    double e_max = 0.0;
};

struct CriticalEnergy {
    double epsilon = 0.0;
    int branch = 1;
};

// Singular extremal points e0 = (1,1,1), e1 = (1,-1,-1), e2 = (-1,1,-1), e3 = (-1,-1,1).
Vec3 singular_point(int index);

MembershipResult gram_membership(double u, double v, double w);

Vec3 line_direction(const Couplings& j);

bool couplings_equal(double a, double b);
bool is_equilateral(const Couplings& j);
bool all_distinct(const Couplings& j);

EnergyRange energy_range(const Couplings& j, double sigma);

// Dense parametric scan of the boundary curve at fixed sigma.
EnergyRange energy_range_scan(const Couplings& j, double sigma, int samples = 100000);

std::vector<CriticalEnergy> critical_energies(const Couplings& j, double sigma);

CaseLabel classify_case(const Couplings& j, const ConservedValues& cv);
CaseLabel classify_case(const Couplings& j, const SpinConfiguration& s);

double tangency_factor(const GramPoint& g, const Couplings& j);

}  // namespace spintri
