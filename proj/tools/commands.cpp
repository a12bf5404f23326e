#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <thread>

#include "format.hpp"
#include "spintri/action_angle.hpp"
#include "spintri/errors.hpp"
#include "spintri/external_dynamics.hpp"
#include "spintri/gram_geometry.hpp"
#include "spintri/json_io.hpp"
#include "spintri/numeric_oracle.hpp"
#include "spintri/solver.hpp"
#include "spintri/special_cases.hpp"
#include "spintri/special_functions.hpp"

namespace cli {

using namespace spintri;
using nlohmann::json;

namespace {

SpinConfiguration require_start(const Instance& in) {
    if (!in.s0) throw UsageError("initial condition missing: use --preset, --spins or --gram");
    return *in.s0;
}

void check_format(const Options& o) {
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
}

std::vector<std::string> trajectory_columns(bool internal) {
    std::vector<std::string> c{"t", "s1x", "s1y", "s1z", "s2x", "s2y", "s2z", "s3x", "s3y", "s3z"};
    if (internal) c.insert(c.end(), {"u", "v", "w", "delta"});
    return c;
}

std::vector<double> trajectory_row(double t, const SpinConfiguration& s, bool internal) {
    std::vector<double> r{t};
    for (int mu = 0; mu < 3; ++mu)
        for (int i = 0; i < 3; ++i) r.push_back(s(i, mu));
    if (internal) {
        GramPoint g = gram(s);
        r.insert(r.end(), {g.u, g.v, g.w, g.delta});
    }
    return r;
}

std::string emit_trajectory(const Options& o, const std::string& command, const std::string& label,
                            const std::vector<double>& times, const Evaluator& f, json extra = json::object()) {
    auto cols = trajectory_columns(o.internal);
    if (o.format == "csv") {
        std::string out = csv_header(cols);
        for (double t : times) out += csv_row(trajectory_row(t, f(t), o.internal));
        return out;
    }
    json rows = json::array();
    for (double t : times) rows.push_back(trajectory_row(t, f(t), o.internal));
    json j = {{"schema_version", kSchemaVersion}, {"command", command}, {"label", label},
              {"columns", cols}, {"rows", rows}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return dump_json(j);
}

Evaluator with_field(const Instance& in, Evaluator base) {
    if (!in.field) return base;
    auto frame = std::make_shared<MagneticFrame>(std::move(base), in.field->b, in.field->e);
    return [frame](double t) { return (*frame)(t); };
}

IntegratorConfig oracle_config(const Options& o) {
    IntegratorConfig cfg;
    cfg.rel_tol = o.rtol;
    cfg.abs_tol = o.atol;
    if (o.max_step > 0.0) cfg.max_step = o.max_step;
    cfg.renormalize = o.renormalize;
    return cfg;
}

std::optional<spintri::Field> oracle_field(const Instance& in) {
    if (!in.field) return std::nullopt;
    return spintri::Field{in.field->b, in.field->e};
}

// Oracle evaluator over [0, span]; a zero span yields the start itself.
Evaluator oracle(const Options& o, const Instance& in, const SpinConfiguration& s0, double span,
                 json* audit_out = nullptr) {
    if (span == 0.0) return [s0](double) { return s0; };
    auto tr = std::make_shared<Trajectory>(integrate(in.j, s0, span, oracle_config(o), oracle_field(in)));
    if (audit_out && !in.field) {
        AuditReport a = audit(*tr, in.j);
        *audit_out = {{"energy", a.energy},
                      {"total_spin", {a.total_spin.x(), a.total_spin.y(), a.total_spin.z()}},
                      {"norms", {a.norms.x(), a.norms.y(), a.norms.z()}},
                      {"gram_identity", a.gram_identity},
                      {"steps", tr->times.size() - 1}};
    }
    return [tr](double t) { return tr->at(t); };
}

double max_deviation(const Evaluator& a, const Evaluator& b, const std::vector<double>& times) {
    double worst = 0.0;
    for (double t : times) worst = std::max(worst, (a(t) - b(t)).cwiseAbs().maxCoeff());
    return worst;
}

int worker_count(int jobs) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SPINTRI_THREADS")) {
        int cap = std::atoi(env);
        if (cap < 1) throw UsageError("SPINTRI_THREADS must be a positive integer");
        hw = static_cast<unsigned>(cap);
    }
    return std::max(1, std::min(jobs, static_cast<int>(hw)));
}

// Runs fn(k) for k < n across workers; results land by index.
template <typename Row, typename Fn>
std::vector<Row> parallel_rows(int n, Fn fn) {
    std::vector<Row> rows(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int k = next++; k < n; k = next++) rows[k] = fn(k);
    };
    std::vector<std::thread> pool;
    int w = worker_count(n);
    for (int i = 1; i < w; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

json conserved_json(const ConservedValues& cv) {
    json j;
    to_json(j, cv);
    return j;
}

json couplings_json(const Couplings& c) {
    json j;
    to_json(j, c);
    return j;
}

int odd_index(const Couplings& j) {
    if (couplings_equal(j.j1, j.j2)) return 2;
    if (couplings_equal(j.j2, j.j3)) return 0;
    if (couplings_equal(j.j1, j.j3)) return 1;
    throw DomainError("face case needs two equal couplings");
}

}  // namespace

int cmd_classify(const Options& o, std::string& out) {
    Instance in = build_instance(o.inst);
    SpinConfiguration s0 = require_start(in);
    CaseLabel lab = classify_case(in.j, s0);
    ConservedValues cv = conserved_values(s0, in.j);
    json j = {{"schema_version", kSchemaVersion},
              {"label", lab.name()},
              {"index", lab.index},
              {"couplings", couplings_json(in.j)},
              {"conserved", conserved_json(cv)},
              {"e_min", nullptr},
              {"e_max", nullptr},
              {"critical_energies", json::array()},
              {"period", nullptr}};
    try {
        EnergyRange er = energy_range(in.j, cv.sigma);
        j["e_min"] = er.e_min;
        j["e_max"] = er.e_max;
        for (const auto& c : critical_energies(in.j, cv.sigma))
            j["critical_energies"].push_back({{"epsilon", c.epsilon}, {"branch", c.branch}});
    } catch (const spintri::Error&) {
        // degenerate couplings have no energy interval at this sigma
    }
    if (lab.kind == CaseKind::Generic) j["period"] = period_at(in.j, cv.sigma, cv.epsilon);
    out = dump_json(j);
    return 0;
}

int cmd_simulate(const Options& o, std::string& out) {
    check_format(o);
    Instance in = build_instance(o.inst);
    Solved sol = solve_any(in.j, require_start(in));
    double span = resolve_span(o.inst.span, sol.period);
    auto times = sample_times(span, o.inst.samples);
    out = emit_trajectory(o, "simulate", sol.label.name(), times, with_field(in, sol.evaluate),
                          {{"period", sol.period}});
    return 0;
}

int cmd_integrate(const Options& o, std::string& out) {
    check_format(o);
    Instance in = build_instance(o.inst);
    SpinConfiguration s0 = require_start(in);
    double period = 0.0;
    if (o.inst.span.back() == 'T') period = solve_any(in.j, s0).period;
    double span = resolve_span(o.inst.span, period);
    auto times = sample_times(span, o.inst.samples);
    json audit_json = nullptr;
    Evaluator f = times.empty() ? Evaluator([s0](double) { return s0; }) : oracle(o, in, s0, span, &audit_json);
    out = emit_trajectory(o, "integrate", classify_case(in.j, s0).name(), times, f, {{"audit", audit_json}});
    return 0;
}

int cmd_compare(const Options& o, std::string& out) {
    Instance in = build_instance(o.inst);
    SpinConfiguration s0 = require_start(in);
    Solved sol = solve_any(in.j, s0);
    double span = resolve_span(o.inst.span, sol.period);
    auto times = sample_times(span, o.inst.samples);
    double dev = 0.0;
    if (!times.empty()) dev = max_deviation(with_field(in, sol.evaluate), oracle(o, in, s0, span), times);
    bool pass = dev <= o.tol;
    out = dump_json({{"schema_version", kSchemaVersion},
                     {"label", sol.label.name()},
                     {"span", span},
                     {"samples", o.inst.samples},
                     {"max_deviation", dev},
                     {"tol", o.tol},
                     {"pass", pass}});
    return pass ? 0 : 4;
}

int cmd_actions(const Options& o, std::string& out) {
    Instance in = build_instance(o.inst);
    ActionAngleData a = action_angle(in.j, require_start(in));
    out = dump_json({{"schema_version", kSchemaVersion},
                     {"i1", a.i1},
                     {"i2", a.i2},
                     {"i3", a.i3},
                     {"omega1", a.omega_1},
                     {"omega2", a.omega_2},
                     {"omega3", a.omega_3},
                     {"T", a.period},
                     {"alpha_T", a.alpha_T}});
    return 0;
}

int cmd_sweep(const Options& o, std::string& out) {
    if (o.sweep_i1 == o.sweep_alpha) throw UsageError("sweep needs exactly one of --i1, --alpha");
    if (o.points < 1) throw UsageError("--points must be positive");
    Instance in = build_instance(o.inst);
    double sigma = 0.0;
    if (!o.sigma.empty()) sigma = parse_list(o.sigma, 1, "--sigma")[0];
    else if (in.s0) sigma = conserved_values(*in.s0, in.j).sigma;
    else throw UsageError("sweep needs --sigma or an initial condition");
    if (!all_distinct(in.j)) throw DomainError("sweep needs pairwise distinct couplings");
    EnergyRange er = energy_range(in.j, sigma);
    const double width = er.e_max - er.e_min;
    auto eps_at = [&](int k) { return er.e_min + width * (k + 0.5) / o.points; };
    const Couplings j = in.j;
    std::vector<std::vector<double>> rows;
    if (o.sweep_i1) {
        const double h = 1e-5 * width;
        rows = parallel_rows<std::vector<double>>(o.points, [&](int k) {
            const double eps = eps_at(k);
            try {
                double d = (action_i1_integral(j, sigma, eps + h) - action_i1_integral(j, sigma, eps - h)) / (2 * h);
                return std::vector<double>{eps, period_at(j, sigma, eps), action_i1_integral(j, sigma, eps), d};
            } catch (const spintri::Error&) {
                return std::vector<double>{eps, NAN, NAN, NAN};
            }
        });
        out = csv_header({"epsilon", "T", "i1", "dI1_deps"});
    } else {
        rows = parallel_rows<std::vector<double>>(o.points, [&](int k) {
            const double eps = eps_at(k);
            try {
                return std::vector<double>{eps, alpha_period(reduce(j, eps, sigma)), smoothed_alpha_at(j, sigma, eps)};
            } catch (const spintri::Error&) {
                return std::vector<double>{eps, NAN, NAN};
            }
        });
        out = csv_header({"epsilon", "alpha_raw", "alpha_smoothed"});
    }
    for (const auto& r : rows) out += csv_row(r);
    return 0;
}

int cmd_special(const Options& o, std::string& out) {
    check_format(o);
    const std::string& c = o.special_case;
    if (c == "aperiodic") {
        if (!o.inst.preset.empty() || !o.inst.couplings.empty() || !o.inst.spins.empty() || !o.inst.gram.empty())
            throw UsageError("special --case aperiodic takes only --lambda");
        auto sol = std::make_shared<AperiodicSolution>(o.lambda);
        auto times = sample_times(resolve_span(o.inst.span, 0.0), o.inst.samples);
        out = emit_trajectory(o, "special", "AperiodicSeparatrix", times, [sol](double t) { return (*sol)(t); },
                              {{"gamma", sol->gamma()}, {"couplings", couplings_json({o.lambda, 1.0, 0.0})}});
        return 0;
    }
    Instance in = build_instance(o.inst);
    if (c == "stationary-states") {
        json list = json::array();
        for (const auto& st : stationary_states(in.j)) {
            const char* kind = st.kind == StationaryKind::CoplanarCritical ? "CoplanarCritical"
                               : st.kind == StationaryKind::Collinear   ? "Collinear"
                                                                         : "TwoSpin";
            list.push_back({{"kind", kind}, {"index", st.index}, {"energy", st.energy},
                            {"spins", to_json_matrix(st.config)}});
        }
        if (!coplanar_critical_gram(in.j))
            std::cerr << "note: no coplanar critical point inside the Gram set for these couplings\n";
        out = dump_json({{"schema_version", kSchemaVersion}, {"couplings", couplings_json(in.j)}, {"states", list}});
        return 0;
    }
    SpinConfiguration s0 = require_start(in);
    Evaluator f;
    double period = 0.0;
    std::string label;
    if (c == "isosceles") {
        auto s = std::make_shared<IsoscelesSolution>(in.j, s0);
        if (s->params().omega12 != 0.0) period = 2.0 * M_PI / std::fabs(s->params().omega12);
        f = [s](double t) { return (*s)(t); };
        label = "Isosceles";
    } else if (c == "equilateral") {
        if (!is_equilateral(in.j)) throw DomainError("equilateral case needs three equal couplings");
        auto s = std::make_shared<EquilateralSolution>(in.j, s0);
        f = [s](double t) { return (*s)(t); };
        label = "Equilateral";
    } else if (c == "face") {
        auto s = std::make_shared<FaceCaseSolution>(in.j, s0, odd_index(in.j));
        f = [s](double t) { return (*s)(t); };
        label = "FaceCase";
    } else if (c == "stationary-gram") {
        auto s = std::make_shared<StationaryGramSolution>(in.j, s0);
        f = [s](double t) { return (*s)(t); };
        label = "StationaryGram";
    } else if (c == "separatrix") {
        CaseLabel lab = classify_case(in.j, s0);
        if (lab.kind != CaseKind::AperiodicSeparatrix) throw DomainError("instance is not on a separatrix");
        auto s = std::make_shared<SeparatrixSolution>(in.j, s0, lab.index);
        f = [s](double t) { return (*s)(t); };
        label = "AperiodicSeparatrix";
    } else {
        throw UsageError("unknown --case '" + c + "'");
    }
    auto times = sample_times(resolve_span(o.inst.span, period), o.inst.samples);
    out = emit_trajectory(o, "special", label, times, with_field(in, f), {{"period", period}});
    return 0;
}

int cmd_elliptic(const Options& o, std::string& out) {
    if (o.m.empty() && o.cubic.empty()) throw UsageError("elliptic needs --m or --cubic");
    if (!o.u.empty() && o.m.empty()) throw UsageError("--u needs --m");
    json j = {{"schema_version", kSchemaVersion}};
    if (!o.m.empty()) {
        double m = parse_list(o.m, 1, "--m")[0];
        j["m"] = m;
        j["K"] = complete_elliptic_k(m);
        if (!o.u.empty()) {
            double u = parse_list(o.u, 1, "--u")[0];
            JacobiTriple t = jacobi_elliptic(u, m);
            j["u"] = u;
            j["sn"] = t.sn;
            j["cn"] = t.cn;
            j["dn"] = t.dn;
        }
    }
    if (!o.cubic.empty()) {
        auto g = parse_list(o.cubic, 2, "--cubic");
        CubicRoots r = solve_depressed_cubic(g[0], g[1]);
        j["g2"] = g[0];
        j["g3"] = g[1];
        j["roots"] = {r.x1, r.x2, r.x3};
        j["degenerate"] = roots_degenerate(r);
        if (!roots_degenerate(r)) {
            HalfPeriods hp = half_periods(r);
            j["omega1"] = hp.omega1;
            j["omega3_im"] = hp.omega3_im;
        }
    }
    out = dump_json(j);
    return 0;
}

int cmd_selftest(const Options& o, std::string& out) {
    if (o.count < 1) throw UsageError("--count must be positive");
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> cj(-2.0, 2.0);
    std::normal_distribution<double> nd(0.0, 1.0);
    json runs = json::array();
    double worst = 0.0;
    for (int k = 0; k < o.count; ++k) {
        Couplings j;
        SpinConfiguration s;
        do {
            j = {cj(rng), cj(rng), cj(rng)};
            for (int mu = 0; mu < 3; ++mu) s.col(mu) = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
        } while (classify_case(j, s).kind != CaseKind::Generic);
        auto sol = solve(j, s);
        Trajectory tr = integrate(j, s, sol->period(), oracle_config(o));
        auto times = sample_times(sol->period(), 101);
        double dev = max_deviation([&](double t) { return sol->evaluate(t); },
                                   [&](double t) { return tr.at(t); }, times);
        worst = std::max(worst, dev);
        runs.push_back({{"couplings", couplings_json(j)}, {"spins", to_json_matrix(s)},
                        {"period", sol->period()}, {"max_deviation", dev}});
    }
    bool pass = worst <= o.tol;
    out = dump_json({{"schema_version", kSchemaVersion},
                     {"seed", o.seed},
                     {"count", o.count},
                     {"tol", o.tol},
                     {"runs", runs},
                     {"max_deviation", worst},
                     {"pass", pass}});
    return pass ? 0 : 4;
}

}  // namespace cli
