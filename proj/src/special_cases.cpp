#include "spintri/special_cases.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spintri/errors.hpp"
#include "spintri/gram_geometry.hpp"

namespace spintri {

namespace {

Vec3 unit_or(const Vec3& v, const Vec3& fallback) {
    double n = v.norm();
    return n > 1e-14 ? Vec3(v / n) : fallback;
}

Mat3 rotate_about(const Vec3& axis, double angle, const Mat3& s) { return Rotation::axis_angle(axis, angle).r * s; }

// Pair (a, b) of the spins other than k.
std::pair<int, int> pair_of(int k) { return {(k + 1) % 3, (k + 2) % 3}; }

int odd_index(const Couplings& j) {
    if (couplings_equal(j.j1, j.j2)) return 2;
    if (couplings_equal(j.j2, j.j3)) return 0;
    if (couplings_equal(j.j1, j.j3)) return 1;
    throw DomainError("no two couplings are equal");
}

double energy_scale(const Couplings& j) { return std::fabs(j.j1) + std::fabs(j.j2) + std::fabs(j.j3); }

}  // namespace

SpinConfiguration isosceles_initial(double s_len, double alpha_p) {
    const double S = s_len, a = alpha_p;
    const double beta = std::sqrt(std::max(0.0, 3.0 - S * S + 2.0 * a * S));
    const double r12 = std::sqrt(std::max(0.0, S * S - 2.0 * a * S + 1.0));
    if (r12 <= 1e-12) throw DegenerateError("r12 vanishes");
    const double c = std::sqrt(std::max(0.0, 1.0 - a * a));
    SpinConfiguration s;
    s.col(0) = 0.5 * Vec3(-c + beta * (S - a) / r12, 0.0, -a + c * beta / r12 + S);
    s.col(1) = 0.5 * Vec3(-c - beta * (S - a) / r12, 0.0, -a - c * beta / r12 + S);
    s.col(2) = Vec3(c, 0.0, a);
    return s;
}

IsoscelesSolution::IsoscelesSolution(const Couplings& j, const SpinConfiguration& s0) : s0_(s0) {
    if (!is_valid_configuration(s0)) throw DomainError("invalid spin configuration");
    const int k = odd_index(j);
    auto [a, b] = pair_of(k);
    Vec3 S = total_spin(s0);
    p_.odd = k;
    p_.j_odd = j[k];
    p_.j_pair = 0.5 * (j[a] + j[b]);
    p_.s_len = S.norm();
    axis_ = unit_or(S, Vec3::UnitZ());
    pair_sum_ = s0.col(a) + s0.col(b);
    p_.alpha_p = p_.s_len > 0.0 ? s0.col(k).dot(S) / p_.s_len : 0.0;
    p_.beta_p = (s0.col(a) - s0.col(b)).norm();
    p_.r12 = pair_sum_.norm();
    if (p_.r12 <= 1e-12) throw DegenerateError("r12 vanishes; use the face case");
    p_.omega12 = (p_.j_odd - p_.j_pair) * p_.r12;
}

SpinConfiguration IsoscelesSolution::operator()(double t) const {
    auto [a, b] = pair_of(p_.odd);
    const Vec3 d0 = s0_.col(a) - s0_.col(b);
    Vec3 d = Rotation::axis_angle(pair_sum_ / p_.r12, p_.omega12 * t).r * d0;
    SpinConfiguration r = s0_;
    r.col(a) = 0.5 * (pair_sum_ + d);
    r.col(b) = 0.5 * (pair_sum_ - d);
    return rotate_about(axis_, p_.j_pair * p_.s_len * t, r);
}

EquilateralSolution::EquilateralSolution(const Couplings& j, const SpinConfiguration& s0) : s0_(s0) {
    if (!is_equilateral(j)) throw DomainError("couplings are not all equal");
    Vec3 S = total_spin(s0);
    axis_ = unit_or(S, Vec3::UnitZ());
    rate_ = (j.j1 + j.j2 + j.j3) / 3.0 * S.norm();
}

SpinConfiguration EquilateralSolution::operator()(double t) const { return rotate_about(axis_, rate_ * t, s0_); }

FaceCaseSolution::FaceCaseSolution(const Couplings& j, double gamma) {
    if (!couplings_equal(j.j1, j.j2)) throw DomainError("face case needs J1 = J2");
    if (!(gamma > -1.0 && gamma < 1.0)) throw DomainError("gamma must lie in (-1, 1)");
    rate_ = 0.5 * (j.j1 + j.j2);
    const double c = std::sqrt(1.0 - gamma * gamma);
    s0_.col(0) = Vec3(c, 0.0, gamma);
    s0_.col(1) = -s0_.col(0);
    s0_.col(2) = Vec3::UnitZ();
}

FaceCaseSolution::FaceCaseSolution(const Couplings& j, const SpinConfiguration& s0, int odd) : s0_(s0) {
    auto [a, b] = pair_of(odd);
    if (!couplings_equal(j[a], j[b])) throw DomainError("pair couplings differ");
    if ((s0.col(a) + s0.col(b)).norm() > 1e-8) throw DomainError("pair spins are not antiparallel");
    rate_ = 0.5 * (j[a] + j[b]);
    axis_ = s0.col(odd).normalized();
}

SpinConfiguration FaceCaseSolution::operator()(double t) const { return rotate_about(axis_, rate_ * t, s0_); }

StationaryGramSolution::StationaryGramSolution(const Couplings& j, const SpinConfiguration& s0) : s0_(s0) {
    if (!is_valid_configuration(s0)) throw DomainError("invalid spin configuration");
    const Vec3 S = total_spin(s0);
    const double s_len = S.norm();
    const double tol = 1e-9 * std::max(1.0, energy_scale(j));
    if (s_len <= 1e-9) {
        // equilateral triangle rotating about m
        Vec3 m = (j.j3 - j.j1) * s0.col(0) + (j.j3 - j.j2) * s0.col(1);
        omega_ = m.norm();
        axis_ = unit_or(m, Vec3::UnitZ());
        return;
    }
    ConservedValues cv = conserved_values(s0, j);
    if (!is_equilateral(j)) {
        EnergyRange er = energy_range(j, cv.sigma);
        if (std::fabs(cv.epsilon - er.e_min) > tol && std::fabs(cv.epsilon - er.e_max) > tol)
            throw NotOnBoundary("energy is not at an end of the admissible range");
    }
    GramPoint g = gram(s0);
    if (std::fabs(g.delta) > 1e-7) throw NotOnBoundary("configuration is not coplanar");

    // frame: S along E3, spins in the 1-3 plane
    axis_ = S / s_len;
    Vec3 n = Vec3::Zero();
    for (int mu = 0; mu < 3; ++mu) {
        Vec3 c = s0.col(mu).cross(s0.col((mu + 1) % 3));
        if (c.norm() > n.norm()) n = c;
    }
    Vec3 ex;
    if (n.norm() < 1e-9) {
        // collinear spins, any plane through S
        ex = unit_or(axis_.cross(Vec3::UnitX()), axis_.cross(Vec3::UnitY()).normalized());
    } else {
        ex = unit_or(n.cross(axis_), Vec3::UnitX());
    }
    for (int mu = 0; mu < 3; ++mu) phi_(mu) = std::atan2(s0.col(mu).dot(ex), s0.col(mu).dot(axis_));

    const double p1 = phi_(0), p2 = phi_(1), p3 = phi_(2);
    const double w1 = j.j2 * std::sin(p1 - p3) + j.j3 * std::sin(p1 - p2);
    const double w2 = -(j.j3 * std::sin(p1 - p2) - j.j1 * std::sin(p2 - p3));
    const double w3 = -(j.j1 * std::sin(p2 - p3) + j.j2 * std::sin(p1 - p3));
    const double num[3] = {w1, w2, w3};
    int best = 0;
    for (int mu = 1; mu < 3; ++mu)
        if (std::fabs(std::sin(phi_(mu))) > std::fabs(std::sin(phi_(best)))) best = mu;
    if (std::fabs(std::sin(phi_(best))) < 1e-12) {
        omega_ = 0.0;  // all spins along S
        return;
    }
    omega_ = num[best] / std::sin(phi_(best));
    for (int mu = 0; mu < 3; ++mu) {
        if (std::fabs(std::sin(phi_(mu))) < 1e-3) continue;
        spread_ = std::max(spread_, std::fabs(num[mu] / std::sin(phi_(mu)) - omega_));
    }
    if (spread_ > 1e-6) throw NotOnBoundary("angular velocities disagree; not a rigid rotation");
}

SpinConfiguration StationaryGramSolution::operator()(double t) const { return rotate_about(axis_, omega_ * t, s0_); }

AperiodicSolution::AperiodicSolution(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
    gamma_ = std::sqrt((1.0 - lambda) * lambda);
}

double AperiodicSolution::x(double t) const {
    double th = std::tanh(gamma_ * t);
    return x1() + (x2() - x1()) * th * th;
}

SpinConfiguration AperiodicSolution::operator()(double t) const {
    const double l = lambda_, g = gamma_;
    const double th = std::tanh(g * t), sh = 1.0 / std::cosh(g * t);
    const double c = std::cos(l * t), s = std::sin(l * t);
    SpinConfiguration out;
    out.col(0) = Vec3(2.0 * th * sh * c, 2.0 * th * sh * s, 1.0 - 2.0 * th * th);
    out.col(1) = Vec3(2.0 * sh * (g * s - l * th * c), -2.0 * sh * (g * c + l * th * s), 1.0 - 2.0 * l * sh * sh);
    out.col(2) = Vec3(-2.0 * sh * (g * s + (1.0 - l) * th * c), 2.0 * sh * (g * c - (1.0 - l) * th * s),
                      1.0 - 2.0 * (1.0 - l) * sh * sh);
    return out;
}

namespace {

SeparatrixSolution::NormalMap normal_form_for(const Couplings& j, int limit_index) {
    if (limit_index < 1 || limit_index > 3) throw DomainError("limit point index must be 1..3");
    const int k = limit_index - 1;
    auto [a, b] = pair_of(k);
    int hi = j[a] >= j[b] ? a : b;
    int lo = hi == a ? b : a;
    const double scale = j[hi] - j[lo];
    if (!(scale > 0.0)) throw DomainError("separatrix needs distinct outer couplings");
    double lambda = (j[k] - j[lo]) / scale;
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("limit coupling is not between the other two");
    return {AperiodicSolution(lambda), {k, hi, lo}, scale, j[lo]};
}

}  // namespace

SeparatrixSolution::SeparatrixSolution(const Couplings& j, const SpinConfiguration& s0, int limit_index)
    : SeparatrixSolution(normal_form_for(j, limit_index), s0) {}

SeparatrixSolution::SeparatrixSolution(NormalMap m, const SpinConfiguration& s0)
    : normal_(m.normal), perm_(m.perm), scale_(m.scale), shift_(m.shift) {
    if (!is_valid_configuration(s0)) throw DomainError("invalid spin configuration");
    SpinConfiguration sp;
    for (int slot = 0; slot < 3; ++slot) sp.col(slot) = s0.col(perm_[slot]);
    GramPoint g = gram(sp);
    // u = -1 + 2 tanh^2(gamma tau) along the normal form
    double th = std::sqrt(std::clamp(0.5 * (1.0 + g.u), 0.0, 1.0 - 1e-16));
    tau0_ = std::atanh(th) / normal_.gamma();
    SpinConfiguration cand = normal_(tau0_);
    if (gram(cand).delta * g.delta < 0.0) {
        tau0_ = -tau0_;
        cand = normal_(tau0_);
    }
    align_ = best_rotation(cand, sp);
    if ((align_.r * cand - sp).cwiseAbs().maxCoeff() > 1e-7)
        throw NoPhaseMatch("configuration is not on the separatrix orbit");
}

SpinConfiguration SeparatrixSolution::operator()(double t) const {
    const Vec3 axis = align_.r * Vec3::UnitZ();  // S, unit length on the separatrix
    SpinConfiguration sp = rotate_about(axis, shift_ * t, align_.r * normal_(tau0_ + scale_ * t));
    SpinConfiguration out;
    for (int slot = 0; slot < 3; ++slot) out.col(perm_[slot]) = sp.col(slot);
    return out;
}

std::optional<GramPoint> coplanar_critical_gram(const Couplings& j) {
    const double j1 = j.j1, j2 = j.j2, j3 = j.j3;
    if (j1 == 0.0 || j2 == 0.0 || j3 == 0.0) return std::nullopt;
    GramPoint g;
    g.v = 0.5 * (j1 * j3 / (j2 * j2) - j1 / j3 - j3 / j1);
    g.u = 0.5 * (j2 * j3 / (j1 * j1) - j2 / j3 - j3 / j2);
    g.w = 0.5 * (j1 * j2 / (j3 * j3) - j1 / j2 - j2 / j1);
    g.delta = 0.0;
    const double tol = 1e-12;
    if (std::fabs(g.u) > 1.0 + tol || std::fabs(g.v) > 1.0 + tol || std::fabs(g.w) > 1.0 + tol) return std::nullopt;
    if (gram_membership(g.u, g.v, g.w).kind == Membership::Singular) return std::nullopt;
    return g;
}

namespace {

SpinConfiguration collinear_state(int n) {
    Vec3 signs = n == 0 ? Vec3(1, 1, 1) : n == 1 ? Vec3(1, -1, -1) : n == 2 ? Vec3(1, -1, 1) : Vec3(1, 1, -1);
    SpinConfiguration s;
    for (int mu = 0; mu < 3; ++mu) s.col(mu) = signs(mu) * Vec3::UnitZ();
    return s;
}

}  // namespace

std::vector<StationaryState> stationary_states(const Couplings& j) {
    std::vector<StationaryState> out;
    const int zeros = (j.j1 == 0.0) + (j.j2 == 0.0) + (j.j3 == 0.0);
    if (zeros == 0) {
        if (auto g = coplanar_critical_gram(j)) {
            // s3 on the first axis, s1 and s2 in the 1-2 plane
            double y1 = std::sqrt(std::max(0.0, 1.0 - g->v * g->v));
            double y2 = -(j.j2 / j.j1) * y1;
            SpinConfiguration s;
            s.col(0) = Vec3(g->v, y1, 0.0);
            s.col(1) = Vec3(g->u, y2, 0.0);
            s.col(2) = Vec3::UnitX();
            if (std::fabs(s.col(1).squaredNorm() - 1.0) <= 1e-9) {
                s = normalized(s);
                out.push_back({s, hamiltonian(s, j), StationaryKind::CoplanarCritical, -1});
            }
        }
    }
    for (int n = 0; n < 4; ++n) {
        SpinConfiguration s = collinear_state(n);
        out.push_back({s, hamiltonian(s, j), StationaryKind::Collinear, n});
    }
    if (zeros == 2) {
        int k = j.j1 != 0.0 ? 0 : j.j2 != 0.0 ? 1 : 2;
        auto [a, b] = pair_of(k);
        // representatives of the up-down and up-up families; s_k is free
        const Vec3 free_dirs[2] = {Vec3::UnitX(), Vec3(1.0, 0.0, 1.0).normalized()};
        for (double sign : {-1.0, 1.0}) {
            for (const Vec3& d : free_dirs) {
                SpinConfiguration s;
                s.col(a) = Vec3::UnitZ();
                s.col(b) = sign * Vec3::UnitZ();
                s.col(k) = d;
                out.push_back({s, hamiltonian(s, j), StationaryKind::TwoSpin, -1});
            }
        }
    }
    return out;
}

MagneticFrame::MagneticFrame(Evaluator zero_field, std::function<double(double)> b, const Vec3& e)
    : base_(std::move(zero_field)), b_(std::move(b)), e_(e.normalized()) {
    cache_[0.0] = 0.0;
}

double MagneticFrame::field_integral(double t) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto hit = cache_.find(t);
    if (hit != cache_.end()) return hit->second;
    // start from the nearest cached time
    auto it = cache_.lower_bound(t);
    double t0, v0;
    if (it == cache_.end()) {
        --it;
    } else if (it != cache_.begin()) {
        auto prev = std::prev(it);
        if (t - prev->first < it->first - t) it = prev;
    }
    t0 = it->first;
    v0 = it->second;
    double v = v0 + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(b_, t0, t, 15, 1e-13);
    cache_[t] = v;
    return v;
}

SpinConfiguration MagneticFrame::operator()(double t) const {
    return rotate_about(e_, field_integral(t), base_(t));
}

double field_mean(const std::function<double(double)>& b, double period) {
    if (!(period > 0.0)) throw DomainError("field period must be positive");
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(b, 0.0, period, 15, 1e-13) / period;
}

Evaluator CouplingReduction::map(Evaluator source_solution) const {
    const Vec3 S = total_spin(source_solution(0.0));
    const double s_len = S.norm();
    const Vec3 axis = unit_or(S, Vec3::UnitZ());
    const double rate = shift * s_len;
    const double sc = scale;
    return [source_solution = std::move(source_solution), axis, rate, sc](double t) {
        return rotate_about(axis, rate * t, source_solution(sc * t));
    };
}

CouplingReduction coupling_reductions(const Couplings& j, double shift, double scale) {
    if (scale == 0.0 || !std::isfinite(scale) || !std::isfinite(shift)) throw DomainError("scale must be nonzero");
    CouplingReduction r;
    r.source = j;
    r.shift = shift;
    r.scale = scale;
    r.target = {scale * j.j1 + shift, scale * j.j2 + shift, scale * j.j3 + shift};
    return r;
}

}  // namespace spintri
