#include "spintri/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "spintri/errors.hpp"

namespace spintri {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Rhs {
    const Couplings& j;
    const std::optional<Field>& field;

    Mat3 operator()(double t, const Mat3& s) const {
        Mat3 out = torque_field(s, j);
        if (field) {
            Vec3 b = field->b(t) * field->e;
            for (int mu = 0; mu < 3; ++mu) out.col(mu) += b.cross(s.col(mu));
        }
        return out;
    }
};

double error_norm(const Mat3& err, const Mat3& y0, const Mat3& y1, const IntegratorConfig& cfg) {
    double sum = 0.0;
    for (int i = 0; i < 9; ++i) {
        double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y0(i)), std::fabs(y1(i)));
        double r = err(i) / sc;
        sum += r * r;
    }
    return std::sqrt(sum / 9.0);
}

Mat3 dense_eval(const Trajectory::Segment& seg, double t) {
    double th = (t - seg.t0) / seg.h;
    double th1 = 1.0 - th;
    const auto& r = seg.rcont;
    return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
}

}  // namespace

SpinConfiguration Trajectory::at(double t) const {
    if (segments.empty()) return states.front();
    const bool fwd = segments.front().h > 0.0;
    // segments are ordered along the integration direction
    auto it = std::lower_bound(segments.begin(), segments.end(), t, [fwd](const Segment& s, double x) {
        double end = s.t0 + s.h;
        return fwd ? end < x : end > x;
    });
    if (it == segments.end()) --it;
    return dense_eval(*it, t);
}

AuditSample audit_sample(double t, const SpinConfiguration& s, const Couplings& j) {
    AuditSample a;
    a.t = t;
    a.energy = hamiltonian(s, j);
    a.total_spin = total_spin(s);
    for (int mu = 0; mu < 3; ++mu) a.norms(mu) = s.col(mu).norm();
    // identity holds for unit columns; use the normalized Gram point
    GramPoint g = gram(normalized(s));
    a.gram_identity = std::fabs(g.delta * g.delta - g.det());
    return a;
}

Trajectory integrate(const Couplings& j, const SpinConfiguration& s0, double t_end, const IntegratorConfig& cfg,
                     const std::optional<Field>& field) {
    if (!(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0)) throw DomainError("integrator tolerances must be positive");
    if (!std::isfinite(t_end)) throw DomainError("end time must be finite");
    Rhs f{j, field};
    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(s0);
    tr.audits.push_back(audit_sample(0.0, s0, j));
    if (t_end == 0.0) return tr;

    const double dir = t_end > 0.0 ? 1.0 : -1.0;
    const double span = std::fabs(t_end);
    double t = 0.0;
    Mat3 y = s0;
    Mat3 k1 = f(t, y);
    double h;
    if (cfg.fixed_step > 0.0) {
        h = cfg.fixed_step;
    } else {
        // initial step from the scale of the derivative
        double d0 = 0.0, d1n = 0.0;
        for (int i = 0; i < 9; ++i) {
            double sc = cfg.abs_tol + cfg.rel_tol * std::fabs(y(i));
            d0 += (y(i) / sc) * (y(i) / sc);
            d1n += (k1(i) / sc) * (k1(i) / sc);
        }
        h = (d0 < 1e-10 || d1n < 1e-10) ? 1e-6 : 0.01 * std::sqrt(d0 / d1n);
        h = std::min(h, 0.1 * span);
    }
    h = std::min(h, cfg.max_step);
    double next_monitor = cfg.monitor_interval > 0.0 ? cfg.monitor_interval : 0.0;
    const double safety = 0.9;
    double err_prev = 1e-4;

    while (dir * (t_end - t) > 0.0) {
        double remaining = std::fabs(t_end - t);
        bool last = h >= remaining * (1.0 - 1e-12);
        if (last) h = remaining;
        if (h < 1e-14 * std::max(1.0, std::fabs(t))) throw StepSizeUnderflow("step size underflow");
        const double hs = dir * h;

        Mat3 k2 = f(t + c2 * hs, y + hs * (a21 * k1));
        Mat3 k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
        Mat3 k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        Mat3 k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Mat3 k6 = f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Mat3 y1 = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        Mat3 k7 = f(t + hs, y1);

        double err = 0.0;
        if (cfg.fixed_step <= 0.0) {
            Mat3 e = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            err = error_norm(e, y, y1, cfg);
            if (err > 1.0) {
                h *= std::max(0.2, safety * std::pow(err, -0.2));
                continue;
            }
        }

        Trajectory::Segment seg;
        seg.t0 = t;
        seg.h = hs;
        seg.rcont[0] = y;
        seg.rcont[1] = y1 - y;
        seg.rcont[2] = hs * k1 - seg.rcont[1];
        seg.rcont[3] = seg.rcont[1] - hs * k7 - seg.rcont[2];
        seg.rcont[4] = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        tr.segments.push_back(seg);

        double t_new = last ? t_end : t + hs;
        if (cfg.monitor_interval > 0.0) {
            while (next_monitor <= std::fabs(t_new) * (1.0 + 1e-14)) {
                double tm = dir * next_monitor;
                tr.audits.push_back(audit_sample(tm, dense_eval(seg, tm), j));
                next_monitor += cfg.monitor_interval;
            }
        } else {
            tr.audits.push_back(audit_sample(t_new, y1, j));
        }

        t = t_new;
        y = cfg.renormalize ? normalized(y1) : y1;
        k1 = cfg.renormalize ? f(t, y) : k7;
        tr.times.push_back(t);
        tr.states.push_back(y);

        if (cfg.fixed_step <= 0.0) {
            // PI step control
            double fac = safety * std::pow(err, -0.17) * std::pow(err_prev, 0.04);
            if (err == 0.0) fac = 10.0;
            fac = std::clamp(fac, 0.2, 10.0);
            err_prev = std::max(err, 1e-4);
            h = std::min(h * fac, cfg.max_step);
        }
    }
    return tr;
}

double AuditReport::worst() const {
    return std::max({energy, total_spin.maxCoeff(), norms.maxCoeff(), gram_identity});
}

AuditReport audit(const Trajectory& traj, const Couplings&) {
    AuditReport r;
    if (traj.audits.empty()) return r;
    const AuditSample& a0 = traj.audits.front();
    for (const AuditSample& a : traj.audits) {
        r.energy = std::max(r.energy, std::fabs(a.energy - a0.energy));
        r.total_spin = r.total_spin.cwiseMax((a.total_spin - a0.total_spin).cwiseAbs());
        r.norms = r.norms.cwiseMax((a.norms - Vec3::Ones()).cwiseAbs());
        r.gram_identity = std::max(r.gram_identity, a.gram_identity);
    }
    return r;
}

}  // namespace spintri
