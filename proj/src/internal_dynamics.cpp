#include "spintri/internal_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "spintri/errors.hpp"

namespace spintri {

Reduction reduction_invariants(const Couplings& j, double epsilon, double sigma) {
    const double J1 = j.j1, J2 = j.j2, J3 = j.j3;
    if (J2 == J3 || J1 == J2 || J1 == J3) throw DomainError("reduction needs pairwise distinct couplings");
    Reduction r;
    r.g = -0.5 * (J1 - J2) * (J1 - J3);
    r.x0 = (-J1 * J1 - J2 * J2 - J3 * J3 + J1 * J3 + J2 * J3 + J1 * J2 + (2.0 * J1 - J2 - J3) * epsilon +
            (2.0 * J2 * J3 - J1 * (J2 + J3)) * sigma) /
           6.0;
    const double d = J2 - J3;
    r.v0 = (epsilon - J3 * sigma) / d;
    r.v1 = (J3 - J1) / d;
    r.w0 = (J2 * sigma - epsilon) / d;
    r.w1 = (J1 - J2) / d;

    const double pref = r.g * r.g * d * d;
    // det G = 1 - u^2 - v^2 - w^2 + 2uvw along the line, as a cubic in u
    double c[4];
    c[3] = 2.0 * r.v1 * r.w1;
    c[2] = 2.0 * (r.v0 * r.w1 + r.v1 * r.w0) - 1.0 - r.v1 * r.v1 - r.w1 * r.w1;
    c[1] = 2.0 * (r.v0 * r.w0 - r.v0 * r.v1 - r.w0 * r.w1);
    c[0] = 1.0 - r.v0 * r.v0 - r.w0 * r.w0;
    double b[4];
    for (int k = 0; k < 4; ++k) b[k] = pref * c[k] / std::pow(r.g, k);
    const double x0 = r.x0;
    double c3 = b[3];
    double c2 = b[2] - 3.0 * b[3] * x0;
    double c1 = b[1] - 2.0 * b[2] * x0 + 3.0 * b[3] * x0 * x0;
    double c0 = b[0] - b[1] * x0 + b[2] * x0 * x0 - b[3] * x0 * x0 * x0;
    r.g2 = -c1;
    r.g3 = -c0;
    const double ax = 1.0 + std::fabs(x0);
    const double scale = std::max({1.0, std::fabs(b[3]) * ax * ax * ax, std::fabs(b[2]) * ax * ax,
                                   std::fabs(b[1]) * ax, std::fabs(b[0])});
    r.consistency_residual = (std::fabs(c3 - 4.0) + std::fabs(c2)) / scale;
    if (r.consistency_residual > 1e-9) throw DomainError("reduced cubic of Pi is inconsistent");
    return r;
}

GramPoint WeierstrassData::gram_at(double x, double xdot) const {
    double u = (x - x0) / g;
    GramPoint p;
    p.u = u;
    p.v = v0 + v1 * u;
    p.w = w0 + w1 * u;
    p.delta = xdot / (g * (j.j3 - j.j2));
    return p;
}

namespace {

// Roots x1 < x2 taken from the two zeros of det G on the line inside [-1, 1];
// stays accurate when g is tiny and x1, x2 nearly coincide.
std::optional<CubicRoots> roots_from_line(const Reduction& r) {
    auto p = [&](double u) {
        double v = r.v0 + r.v1 * u, w = r.w0 + r.w1 * u;
        return 1.0 - u * u - v * v - w * w + 2.0 * u * v * w;
    };
    const double c3 = 2.0 * r.v1 * r.w1;
    const double c2 = 2.0 * (r.v0 * r.w1 + r.v1 * r.w0) - 1.0 - r.v1 * r.v1 - r.w1 * r.w1;
    const double c1 = 2.0 * (r.v0 * r.w0 - r.v0 * r.v1 - r.w0 * r.w1);
    std::vector<double> cand;
    for (int k = 0; k < 64; ++k) cand.push_back(std::cos(M_PI * (k + 0.5) / 64.0));
    // stationary points of p
    const double qa = 3.0 * c3, qb = 2.0 * c2, qc = c1;
    if (qa == 0.0) {
        if (qb != 0.0) cand.push_back(-qc / qb);
    } else {
        double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
            if (q != 0.0) cand.push_back(qc / q);
            cand.push_back(q / qa);
        }
    }
    double best = -1.0, pbest = 0.0;
    for (double u : cand) {
        if (!(u > -1.0 && u < 1.0)) continue;
        double pu = p(u);
        if (pu > pbest) {
            pbest = pu;
            best = u;
        }
    }
    if (!(pbest > 0.0)) return std::nullopt;
    auto root = [&](double a, double b) {
        double fa = p(a), fb = p(b);
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        boost::uintmax_t it = 200;
        auto br = boost::math::tools::toms748_solve(p, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), it);
        return 0.5 * (br.first + br.second);
    };
    if (p(-1.0) > 0.0 || p(1.0) > 0.0) return std::nullopt;
    double ua = root(-1.0, best), ub = root(best, 1.0);
    double xa = r.x_of_u(ua), xb = r.x_of_u(ub);
    if (xa > xb) std::swap(xa, xb);
    double xc = -(xa + xb);
    if (!(xc > xb)) return std::nullopt;
    return CubicRoots{xa, xb, xc};
}

}  // namespace

WeierstrassData reduce(const Couplings& j, double epsilon, double sigma) {
    Reduction r = reduction_invariants(j, epsilon, sigma);
    WeierstrassData wd;
    wd.j = j;
    wd.epsilon = epsilon;
    wd.sigma = sigma;
    wd.g = r.g;
    wd.x0 = r.x0;
    wd.g2 = r.g2;
    wd.g3 = r.g3;
    wd.v0 = r.v0;
    wd.v1 = r.v1;
    wd.w0 = r.w0;
    wd.w1 = r.w1;
    auto line = roots_from_line(r);
    wd.roots = line ? *line : solve_depressed_cubic(r.g2, r.g3);
    wd.periods = half_periods(wd.roots);
    wd.wp.emplace(wd.roots);
    return wd;
}

GramPoint internal_state(double t, const WeierstrassData& wd) {
    WpValue p = (*wd.wp)(t);
    return wd.gram_at(p.x, p.xdot);
}

GramPoint internal_state(double t, const WeierstrassData& wd, const Couplings& j, double epsilon,
                         double sigma) {
    if (j.j1 != wd.j.j1 || j.j2 != wd.j.j2 || j.j3 != wd.j.j3 || epsilon != wd.epsilon || sigma != wd.sigma)
        throw DomainError("reduction data does not match the instance");
    return internal_state(t, wd);
}

InternalRates internal_rates(const GramPoint& gp, const Couplings& j) {
    const double u = gp.u, v = gp.v, w = gp.w, d = gp.delta;
    InternalRates r;
    r.udot = (j.j3 - j.j2) * d;
    r.vdot = (j.j1 - j.j3) * d;
    r.wdot = (j.j2 - j.j1) * d;
    r.deltadot = j.j1 * (u + 1.0) * (w - v) + j.j2 * (v + 1.0) * (u - w) + j.j3 * (w + 1.0) * (v - u);
    return r;
}

}  // namespace spintri
