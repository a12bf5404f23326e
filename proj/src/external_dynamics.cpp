#include "spintri/external_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "spintri/errors.hpp"
#include "spintri/gram_geometry.hpp"

namespace spintri {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

}  // namespace

double wrap_angle(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

double max_abs_delta(const WeierstrassData& wd) {
    // |xdot| peaks where Pi'(x) = 0 inside [x1, x2]
    double xs = -std::sqrt(wd.g2 / 12.0);
    return std::sqrt(std::max(0.0, wd.pi(xs))) / std::fabs(wd.g * (wd.j.j3 - wd.j.j2));
}

OmegaEvaluator::OmegaEvaluator(const WeierstrassData& w) : wd(w), delta_switch(1e-5 * max_abs_delta(w)) {}

double OmegaEvaluator::full(const GramPoint& g) const {
    InternalRates rt = internal_rates(g, wd.j);
    GramPoint rate{rt.udot, rt.vdot, rt.wdot, rt.deltadot};
    Mat3 r = standard_config(g);
    Mat3 m = torque_field(r, wd.j) - standard_config_derivative(g, rate);
    double num = 0.0, den = 0.0;
    for (int mu = 0; mu < 3; ++mu) {
        // generator of rotations about E3 applied to r_mu
        double ex = -r(1, mu), ey = r(0, mu);
        num += m(0, mu) * ex + m(1, mu) * ey;
        den += ex * ex + ey * ey;
    }
    return num / den;
}

double OmegaEvaluator::limit(const GramPoint& g) const {
    const double u = g.u, sig = wd.sigma;
    const double d = 2.0 * (u + 1.0) - (u - sig) * (u - sig);
    if (std::fabs(d) < 1e-10) throw CriticalPointSingularity("orbit passes a critical point");
    return std::sqrt(2.0 * sig + 3.0) * ((wd.j.j2 + wd.j.j3) * (u + 1.0) - (u - sig) * (wd.j.j1 * u - wd.epsilon)) / d;
}

double OmegaEvaluator::operator()(double t) const {
    GramPoint g = internal_state(t, wd);
    if (std::fabs(g.delta) <= delta_switch) return limit(g);
    return full(g);
}

double omega_dot_alpha(double t, const WeierstrassData& wd) { return OmegaEvaluator(wd)(t); }

double alpha_period(const WeierstrassData& wd) {
    OmegaEvaluator om(wd);
    const double T = wd.period();
    double total = 0.0;
    for (int q = 0; q < 4; ++q) total += GK15::integrate(om, q * T / 4.0, (q + 1) * T / 4.0, 12, 1e-10);
    return total;
}

AlphaTable::AlphaTable(const WeierstrassData& wd, int nodes_per_period)
    : period_(wd.period()), alpha_(nodes_per_period + 1), rate_(nodes_per_period + 1) {
    OmegaEvaluator om(wd);
    const int n = nodes_per_period;
    const double h = period_ / n;
    alpha_[0] = 0.0;
    for (int k = 0; k <= n; ++k) rate_[k] = om(k * h);
    for (int k = 0; k < n; ++k) alpha_[k + 1] = alpha_[k] + GK15::integrate(om, k * h, (k + 1) * h, 3, 1e-10);
    alpha_T_ = alpha_[n];
}

double AlphaTable::operator()(double t) const {
    const int n = nodes();
    const double h = period_ / n;
    double cycles = std::floor(t / period_);
    double tau = t - cycles * period_;
    int k = std::clamp(static_cast<int>(tau / h), 0, n - 1);
    double s = (tau - k * h) / h;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    double local = h00 * alpha_[k] + h10 * h * rate_[k] + h01 * alpha_[k + 1] + h11 * h * rate_[k + 1];
    return cycles * alpha_T_ + local;
}

ExternalSolution::ExternalSolution(WeierstrassData wd, Rotation alignment, double t_init)
    : wd_(std::move(wd)), alignment_(alignment), t_init_(t_init), table_(wd_) {}

double ExternalSolution::alpha_T_wrapped() const { return wrap_angle(alpha_T()); }

Rotation ExternalSolution::z(double t) const { return Rotation::axis_angle(Vec3::UnitZ(), alpha(t)); }

SpinConfiguration ExternalSolution::evaluate(double t) const {
    double tau = t + t_init_;
    Rotation rot = Rotation::axis_angle(Vec3::UnitZ(), alpha(tau) - alpha(t_init_));
    return alignment_.r * rot.r * standard_config(internal_state(tau, wd_));
}

double find_phase(const WeierstrassData& wd, const GramPoint& g) {
    const ShiftedWeierstrass& wp = *wd.wp;
    const double T = wd.period();
    const double xt = std::clamp(wd.x0 + wd.g * g.u, wd.roots.x1, wd.roots.x2);
    const double xdt = wd.g * (wd.j.j3 - wd.j.j2) * g.delta;
    auto f = [&](double t) { return wp(t).x - xt; };
    double t;
    double f0 = f(0.0), f1 = f(0.5 * T);
    if (f0 >= 0.0) t = 0.0;
    else if (f1 <= 0.0) t = 0.5 * T;
    else {
        boost::uintmax_t iters = 200;
        auto br = boost::math::tools::toms748_solve(f, 0.0, 0.5 * T, f0, f1,
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
        t = 0.5 * (br.first + br.second);
    }
    if (xdt < 0.0) t = T - t;
    // Gauss-Newton on (x, xdot), resolves the phase near turning points
    auto resid = [&](double s) {
        WpValue p = wp(s);
        return std::hypot(p.x - xt, p.xdot - xdt);
    };
    for (int it = 0; it < 4; ++it) {
        WpValue p = wp(t);
        double xdd = 6.0 * p.x * p.x - 0.5 * wd.g2;
        double r1 = p.x - xt, r2 = p.xdot - xdt;
        double den = p.xdot * p.xdot + xdd * xdd;
        if (den == 0.0) break;
        double tn = t - (r1 * p.xdot + r2 * xdd) / den;
        if (resid(tn) >= resid(t)) break;
        t = tn;
    }
    t = std::fmod(t, T);
    if (t < 0.0) t += T;
    return t;
}

std::unique_ptr<ExternalSolution> solve(const Couplings& j, const SpinConfiguration& s0) {
    CaseLabel label = classify_case(j, s0);
    if (label.kind != CaseKind::Generic) throw NotGenericError("instance is " + label.name());
    ConservedValues cv = conserved_values(s0, j);
    WeierstrassData wd = reduce(j, cv.epsilon, cv.sigma);
    double t_init = find_phase(wd, gram(s0));
    Mat3 r0 = standard_config(internal_state(t_init, wd));
    Rotation r = best_rotation(r0, s0);
    if ((r.r * r0 - s0).cwiseAbs().maxCoeff() > 1e-7) throw NoPhaseMatch("initial state is not on the standard orbit");
    return std::make_unique<ExternalSolution>(std::move(wd), r, t_init);
}

FloquetData floquet_monodromy(const ExternalSolution& sol) {
    const double T = sol.period();
    FloquetData out;
    out.f = sol.alpha_T_wrapped() / T;
    out.z_t = Rotation::axis_angle(Vec3::UnitZ(), sol.alpha_T());
    Mat3 F = Mat3::Zero();
    F(0, 1) = -out.f;
    F(1, 0) = out.f;
    Mat3 e = (F * T).exp();
    out.reconstruction_error = (e - out.z_t.r).cwiseAbs().maxCoeff();
    return out;
}

std::vector<AlphaSweepRow> smoothed_alpha_T(const Couplings& j, double sigma, const std::vector<double>& eps_grid) {
    std::vector<double> crit;
    for (const auto& c : critical_energies(j, sigma)) crit.push_back(c.epsilon);
    const double near = 1e-9 * (std::fabs(j.j1) + std::fabs(j.j2) + std::fabs(j.j3));
    for (double e : eps_grid)
        for (double c : crit)
            if (std::fabs(e - c) <= near) throw CriticalPointSingularity("alpha(T) is undefined at a critical energy");
    std::vector<AlphaSweepRow> rows(eps_grid.size());
    for (std::size_t k = 0; k < eps_grid.size(); ++k) {
        rows[k].epsilon = eps_grid[k];
        rows[k].raw = alpha_period(reduce(j, eps_grid[k], sigma));
    }
    if (rows.empty()) return rows;
    auto straddles = [&](std::size_t k) {
        double lo = std::min(rows[k - 1].epsilon, rows[k].epsilon), hi = std::max(rows[k - 1].epsilon, rows[k].epsilon);
        return std::any_of(crit.begin(), crit.end(), [&](double c) { return c > lo && c <= hi; });
    };
    double offset = 0.0;
    rows[0].smoothed = rows[0].raw;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        double d = rows[k].raw - rows[k - 1].raw;
        if (straddles(k)) {
            double n = std::round(d / kTwoPi);
            double rest = std::fabs(d - kTwoPi * n);
            double ref = 0.0;
            if (k >= 2 && !straddles(k - 1)) ref = std::max(ref, std::fabs(rows[k - 1].raw - rows[k - 2].raw));
            if (k + 1 < rows.size() && !straddles(k + 1)) ref = std::max(ref, std::fabs(rows[k + 1].raw - rows[k].raw));
            if (rest > std::max(10.0 * ref, 0.05)) throw RefinementRequired("grid too coarse near a critical energy");
            offset -= kTwoPi * n;
        } else if (std::fabs(d) > std::numbers::pi) {
            throw RefinementRequired("jump of alpha(T) away from critical energies");
        }
        rows[k].smoothed = rows[k].raw + offset;
    }
    return rows;
}

}  // namespace spintri
