#include "spintri/gram_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "spintri/errors.hpp"
#include "spintri/internal_dynamics.hpp"

namespace spintri {

namespace {

constexpr double kPi = std::numbers::pi;

double det_g(const Vec3& p) { return 1.0 - p.squaredNorm() + 2.0 * p.x() * p.y() * p.z(); }

double coupling_scale(const Couplings& j) {
    return std::max({1.0, std::fabs(j.j1), std::fabs(j.j2), std::fabs(j.j3)});
}

// Boundary point of the Gram set in direction theta within the plane u+v+w = sigma.
struct BoundaryCurve {
    Vec3 c, a, b;

    BoundaryCurve(double sigma)
        : c(Vec3::Constant(sigma / 3.0)),
          a(Vec3(1.0, -1.0, 0.0) / std::sqrt(2.0)),
          b(Vec3(1.0, 1.0, -2.0) / std::sqrt(6.0)) {}

    Vec3 point(double theta) const {
        Vec3 d = std::cos(theta) * a + std::sin(theta) * b;
        double rmax = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 3; ++i) {
            if (d(i) > 1e-15) rmax = std::min(rmax, (1.0 - c(i)) / d(i));
            if (d(i) < -1e-15) rmax = std::min(rmax, (-1.0 - c(i)) / d(i));
        }
        // inside the cube det G > 0 holds exactly on the interior of the Gram set
        constexpr int steps = 32;
        double lo = 0.0, hi = rmax;
        for (int k = 1; k <= steps; ++k) {
            double r = rmax * k / steps;
            if (det_g(c + r * d) <= 0.0) {
                hi = r;
                break;
            }
            lo = r;
        }
        if (lo == rmax) return c + rmax * d;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (det_g(c + mid * d) > 0.0) lo = mid;
            else hi = mid;
        }
        return c + lo * d;
    }
};

EnergyRange point_range(double e) { return {e, e}; }

std::optional<EnergyRange> range_from_discriminant(const Couplings& j, double sigma) {
    const double E = std::fabs(j.j1) + std::fabs(j.j2) + std::fabs(j.j3);
    auto delta = [&](double e) { return reduction_invariants(j, e, sigma).discriminant(); };
    constexpr int n = 2048;
    std::vector<double> candidates;
    double e_prev = -E, d_prev = delta(e_prev);
    for (int k = 1; k <= n; ++k) {
        double e = -E + 2.0 * E * k / n;
        double d = delta(e);
        if (d == 0.0) candidates.push_back(e);
        else if (d_prev != 0.0 && (d > 0.0) != (d_prev > 0.0)) {
            boost::uintmax_t iters = 200;
            auto tol = [](double x, double y) { return std::fabs(x - y) <= 1e-15 * std::max(1.0, std::fabs(x)); };
            auto br = boost::math::tools::toms748_solve(delta, e_prev, e, d_prev, d, tol, iters);
            candidates.push_back(0.5 * (br.first + br.second));
        }
        e_prev = e;
        d_prev = d;
    }
    std::vector<double> valid;
    for (double e : candidates) {
        Reduction r = reduction_invariants(j, e, sigma);
        if (r.g2 <= 0.0) continue;
        double xd = -1.5 * r.g3 / r.g2;
        double u = r.u_of_x(xd);
        Vec3 p(u, r.v0 + r.v1 * u, r.w0 + r.w1 * u);
        if (p.cwiseAbs().maxCoeff() <= 1.0 + 1e-7) valid.push_back(e);
    }
    if (valid.empty()) return std::nullopt;
    auto [lo, hi] = std::minmax_element(valid.begin(), valid.end());
    return EnergyRange{*lo, *hi};
}

}  // namespace

std::string CaseLabel::name() const {
    switch (kind) {
        case CaseKind::Generic: return "Generic";
        case CaseKind::Isosceles: return "Isosceles";
        case CaseKind::Equilateral: return "Equilateral";
        case CaseKind::StationaryGram: return "StationaryGram";
        case CaseKind::AperiodicSeparatrix: return "AperiodicSeparatrix";
        case CaseKind::FaceCase: return "FaceCase";
        case CaseKind::Collinear: return "Collinear";
        case CaseKind::ZeroTotalSpin: return "ZeroTotalSpin";
    }
    return "Unknown";
}

Vec3 singular_point(int index) {
    switch (index) {
        case 0: return {1.0, 1.0, 1.0};
        case 1: return {1.0, -1.0, -1.0};
        case 2: return {-1.0, 1.0, -1.0};
        case 3: return {-1.0, -1.0, 1.0};
        default: throw DomainError("singular point index must be 0..3");
    }
}

MembershipResult gram_membership(double u, double v, double w) {
    Vec3 p(u, v, w);
    for (int n = 0; n < 4; ++n)
        if ((p - singular_point(n)).norm() <= 1e-9) return {Membership::Singular, n};
    if (p.cwiseAbs().maxCoeff() > 1.0 + 1e-12) return {Membership::Outside, -1};
    double d = det_g(p);
    if (d > 1e-12) return {Membership::Interior, -1};
    if (d >= -1e-12) return {Membership::Boundary, -1};
    return {Membership::Outside, -1};
}

bool couplings_equal(double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool is_equilateral(const Couplings& j) {
    return couplings_equal(j.j1, j.j2) && couplings_equal(j.j2, j.j3) && couplings_equal(j.j1, j.j3);
}

bool all_distinct(const Couplings& j) {
    return !couplings_equal(j.j1, j.j2) && !couplings_equal(j.j2, j.j3) && !couplings_equal(j.j1, j.j3);
}

Vec3 line_direction(const Couplings& j) {
    double spread = std::max({std::fabs(j.j1 - j.j2), std::fabs(j.j2 - j.j3), std::fabs(j.j1 - j.j3)});
    if (spread < 1e-12) throw EquilateralError("line direction undefined for equal couplings");
    return {j.j3 - j.j2, j.j1 - j.j3, j.j2 - j.j1};
}

EnergyRange energy_range_scan(const Couplings& j, double sigma, int samples) {
    if (sigma < -1.5 - 1e-12 || sigma > 3.0 + 1e-12) throw DomainError("sigma outside [-3/2, 3]");
    const Vec3 jv = j.vec();
    if (sigma >= 3.0 - 1e-12) return point_range(jv.sum());
    if (sigma <= -1.5 + 1e-12) return point_range(-0.5 * jv.sum());
    BoundaryCurve curve(sigma);
    auto energy = [&](double th) { return jv.dot(curve.point(th)); };
    const double h = 2.0 * kPi / samples;
    int kmin = 0, kmax = 0;
    double emin = energy(0.0), emax = emin;
    for (int k = 1; k < samples; ++k) {
        double e = energy(k * h);
        if (e < emin) emin = e, kmin = k;
        if (e > emax) emax = e, kmax = k;
    }
    auto lo = boost::math::tools::brent_find_minima(energy, (kmin - 1) * h, (kmin + 1) * h, 52);
    auto hi = boost::math::tools::brent_find_minima([&](double th) { return -energy(th); }, (kmax - 1) * h,
                                                    (kmax + 1) * h, 52);
    return {std::min(emin, lo.second), std::max(emax, -hi.second)};
}

EnergyRange energy_range(const Couplings& j, double sigma) {
    if (sigma < -1.5 - 1e-12 || sigma > 3.0 + 1e-12) throw DomainError("sigma outside [-3/2, 3]");
    const Vec3 jv = j.vec();
    if (sigma >= 3.0 - 1e-12) return point_range(jv.sum());
    if (sigma <= -1.5 + 1e-12) return point_range(-0.5 * jv.sum());
    if (is_equilateral(j)) return point_range(j.j1 * sigma);

    EnergyRange coarse = energy_range_scan(j, sigma, 4096);
    if (!all_distinct(j)) return energy_range_scan(j, sigma);
    auto disc = range_from_discriminant(j, sigma);
    const double tol = 1e-4 * coupling_scale(j);
    if (disc && std::fabs(disc->e_min - coarse.e_min) <= tol && std::fabs(disc->e_max - coarse.e_max) <= tol)
        return *disc;
    return energy_range_scan(j, sigma);
}

std::vector<CriticalEnergy> critical_energies(const Couplings& j, double sigma) {
    std::vector<CriticalEnergy> out;
    if (sigma < -1.5 || sigma > 3.0) return out;
    const double s = std::sqrt(3.0 + 2.0 * sigma);
    const double j23 = 0.5 * (j.j2 + j.j3);
    out.push_back({j23 * (s - 1.0) + j.j1 * (1.0 + sigma - s), 1});
    if (sigma <= -1.0) out.push_back({-j23 * (s + 1.0) + j.j1 * (1.0 + sigma + s), 2});
    return out;
}

CaseLabel classify_case(const Couplings& j, const ConservedValues& cv) {
    const double sigma = cv.sigma, eps = cv.epsilon;
    const double S = std::sqrt(std::max(0.0, 3.0 + 2.0 * sigma));
    if (sigma < -1.5 - 1e-9 || sigma > 3.0 + 1e-9 || std::fabs(cv.sigma3) > S + 1e-9)
        throw InconsistentConservedValues("conserved values outside their admissible ranges");
    const double scale = coupling_scale(j);

    if (is_equilateral(j)) return {CaseKind::Equilateral, -1};
    int odd = -1;
    if (couplings_equal(j.j1, j.j2)) odd = 2;
    else if (couplings_equal(j.j2, j.j3)) odd = 0;
    else if (couplings_equal(j.j1, j.j3)) odd = 1;
    if (odd >= 0) {
        if (std::fabs(sigma + 1.0) <= 1e-9 && std::fabs(eps + j[odd]) <= 1e-9 * scale)
            return {CaseKind::FaceCase, odd};
        return {CaseKind::Isosceles, odd};
    }
    if (sigma >= 3.0 - 1e-9) return {CaseKind::Collinear, 0};
    if (sigma <= -1.5 + 1e-9) return {CaseKind::ZeroTotalSpin, -1};
    if (std::fabs(sigma + 1.0) <= 1e-10) {
        const Vec3 jv = j.vec();
        for (int n = 1; n <= 3; ++n)
            if (std::fabs(eps - jv.dot(singular_point(n))) <= 1e-10 * scale)
                return {CaseKind::AperiodicSeparatrix, n};
    }
    EnergyRange er = energy_range(j, sigma);
    const double etol = 1e-9 * scale;
    if (eps < er.e_min - 1e-6 * scale || eps > er.e_max + 1e-6 * scale)
        throw InconsistentConservedValues("energy outside the attainable range");
    if (eps <= er.e_min + etol || eps >= er.e_max - etol) return {CaseKind::StationaryGram, -1};
    return {CaseKind::Generic, -1};
}

CaseLabel classify_case(const Couplings& j, const SpinConfiguration& s) {
    GramPoint g = gram(s);
    MembershipResult m = gram_membership(g.u, g.v, g.w);
    if (m.kind == Membership::Singular) return {CaseKind::Collinear, m.singular_index};
    return classify_case(j, conserved_values(s, j));
}

double tangency_factor(const GramPoint& g, const Couplings& j) {
    Vec3 grad(g.v * g.w - g.u, g.u * g.w - g.v, g.u * g.v - g.w);
    return 2.0 * line_direction(j).dot(grad);
}

}  // namespace spintri
