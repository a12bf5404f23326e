#include "spintri/action_angle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spintri/errors.hpp"
#include "spintri/gram_geometry.hpp"
#include "spintri/internal_dynamics.hpp"

namespace spintri {

namespace {

double energy_scale(const Couplings& j) { return std::fabs(j.j1) + std::fabs(j.j2) + std::fabs(j.j3); }

// Signed spherical area enclosed by a closed polyline, cap convention about +z.
double swept_area(const std::vector<Vec3>& pts) {
    double area = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Vec3& a = pts[k];
        const Vec3& b = pts[k + 1];
        if (a.head<2>().norm() < 1e-9 || b.head<2>().norm() < 1e-9) {
            if (a.z() < 0.0 || b.z() < 0.0) throw AreaAmbiguity("orbit passes through the antipode of S");
            continue;
        }
        double dphi = std::atan2(a.x() * b.y() - a.y() * b.x(), a.x() * b.x() + a.y() * b.y());
        if (std::fabs(dphi) > 0.5 * M_PI) throw AreaAmbiguity("orbit sampling too coarse near the antipode of S");
        area += (1.0 - 0.5 * (a.z() + b.z())) * dphi;
    }
    return area;
}

}  // namespace

std::pair<double, double> actions_i2_i3(const ConservedValues& cv) { return {cv.s_len - 3.0, cv.sigma3 - 3.0}; }

double period_at(const Couplings& j, double sigma, double epsilon) {
    Reduction r = reduction_invariants(j, epsilon, sigma);
    CubicRoots x = solve_depressed_cubic(r.g2, r.g3);
    double span = x.x3 - x.x1;
    if (!(span > 0.0)) throw DegenerateRootsError("triple root");
    return 2.0 * complete_elliptic_k(std::clamp((x.x2 - x.x1) / span, 0.0, 1.0 - 1e-16)) / std::sqrt(span);
}

double harmonic_period_limit(const Couplings& j, double sigma, int which) {
    EnergyRange er = energy_range(j, sigma);
    Reduction r = reduction_invariants(j, which == 0 ? er.e_min : er.e_max, sigma);
    // double root of 4x^3 - g2 x - g3
    double x_dbl = -1.5 * r.g3 / r.g2;
    return 2.0 * M_PI / std::sqrt(12.0 * std::fabs(x_dbl));
}

double action_i1_integral(const Couplings& j, double sigma, double epsilon) {
    EnergyRange er = energy_range(j, sigma);
    if (!(epsilon >= er.e_min && epsilon <= er.e_max)) throw DomainError("energy outside the admissible range");
    std::vector<double> knots{er.e_min};
    for (const CriticalEnergy& c : critical_energies(j, sigma))
        if (c.epsilon > er.e_min && c.epsilon < epsilon) knots.push_back(c.epsilon);
    knots.push_back(epsilon);
    std::sort(knots.begin(), knots.end());
    auto f = [&](double e) { return period_at(j, sigma, e); };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        if (knots[k + 1] <= knots[k]) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, knots[k], knots[k + 1], 15,
                                                                               1e-12);
    }
    return total / (2.0 * M_PI);
}

double smoothed_alpha_at(const Couplings& j, double sigma, double epsilon) {
    EnergyRange er = energy_range(j, sigma);
    const double h = 1e-4 * energy_scale(j);
    double raw = 0.0;
    for (const CriticalEnergy& c : critical_energies(j, sigma)) {
        if (std::fabs(epsilon - c.epsilon) <= 1e-9 * energy_scale(j))
            throw CriticalPointSingularity("alpha(T) is undefined at a critical energy");
        if (c.epsilon - h <= er.e_min || c.epsilon >= epsilon) continue;
        if (c.epsilon + h >= er.e_max) continue;
        double below = alpha_period(reduce(j, c.epsilon - h, sigma));
        double above = alpha_period(reduce(j, c.epsilon + h, sigma));
        raw -= 2.0 * M_PI * std::round((above - below) / (2.0 * M_PI));
    }
    return raw + alpha_period(reduce(j, epsilon, sigma));
}

double action_i1_area(const Couplings& j, double sigma, double epsilon, int samples) {
    WeierstrassData wd = reduce(j, epsilon, sigma);
    double alpha_s = smoothed_alpha_at(j, sigma, epsilon);
    ExternalSolution sol(wd, Rotation{}, 0.0);
    const double T = sol.period();
    std::vector<std::vector<Vec3>> curves(3, std::vector<Vec3>(samples + 1));
    for (int k = 0; k <= samples; ++k) {
        double t = T * k / samples;
        Mat3 rbar = Rotation::axis_angle(Vec3::UnitZ(), -alpha_s * t / T).r * sol.evaluate(t);
        for (int mu = 0; mu < 3; ++mu) curves[mu][k] = rbar.col(mu);
    }
    double total = 0.0;
    // winding-weighted, so self-crossing orbits are fine
    for (const auto& c : curves) total += swept_area(c);
    // the basic-cycle flows turn clockwise about S
    return -total / (2.0 * M_PI);
}

std::pair<double, double> frequencies(const ExternalSolution& sol) {
    return {2.0 * M_PI / sol.period(), sol.alpha_T_wrapped() / sol.period()};
}

ActionAngleData action_angle(const Couplings& j, const SpinConfiguration& s) {
    auto sol = solve(j, s);
    ConservedValues cv = conserved_values(s, j);
    ActionAngleData d;
    std::tie(d.i2, d.i3) = actions_i2_i3(cv);
    d.i1 = action_i1_integral(j, cv.sigma, cv.epsilon);
    std::tie(d.omega_1, d.omega_2) = frequencies(*sol);
    d.period = sol->period();
    d.alpha_T = sol->alpha_T();
    return d;
}

}  // namespace spintri
