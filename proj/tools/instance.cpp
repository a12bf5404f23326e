#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "spintri/errors.hpp"
#include "spintri/internal_dynamics.hpp"
#include "spintri/special_cases.hpp"

namespace cli {

using namespace spintri;

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& tok, const std::string& what) {
    std::string t = trim(tok);
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot read a number from '" + t + "' in " + what);
    }
    if (used != t.size() || !std::isfinite(x)) throw UsageError("bad number '" + t + "' in " + what);
    return x;
}

// "name(args)" -> name, args; a bare name has empty args.
std::pair<std::string, std::string> split_call(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos) return {trim(text), ""};
    if (text.back() != ')') throw UsageError("unbalanced parentheses in '" + text + "'");
    return {trim(text.substr(0, open)), text.substr(open + 1, text.size() - open - 2)};
}

Vec3 unit_vector(const std::string& text, const std::string& what) {
    auto v = parse_list(text, 3, what);
    Vec3 e(v[0], v[1], v[2]);
    if (e.norm() == 0.0) throw UsageError(what + " must be nonzero");
    return e.normalized();
}

struct Preset {
    Couplings j;
    SpinConfiguration s0;
};

// Worked example: sigma = 0, epsilon = sqrt(2)/4, started a quarter period after the turning point.
Preset paper_example() {
    const double r = std::sqrt(2.0) / 2.0;
    Couplings j{-0.5, 0.5 + r, r};
    WeierstrassData wd = reduce(j, r / 2.0, 0.0);
    return {j, standard_config(internal_state(0.25 * wd.period(), wd))};
}

// Normal form J = (lambda, 1, 0) at its coplanar turning point.
Preset aperiodic(const std::string& args) {
    auto v = parse_list(args, 1, "aperiodic(lambda)");
    return {{v[0], 1.0, 0.0}, AperiodicSolution(v[0])(0.0)};
}

// isosceles(j, j_odd, S, alpha): J1 = J2 = j, J3 = j_odd.
Preset isosceles(const std::string& args) {
    auto v = parse_list(args, 4, "isosceles(j, j_odd, S, alpha)");
    return {{v[0], v[0], v[1]}, isosceles_initial(v[2], v[3])};
}

FieldSpec parse_field(const std::string& text, const std::string& axis) {
    FieldSpec f;
    f.e = unit_vector(axis, "--field-axis");
    auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("field needs a kind prefix, e.g. constant:0.5");
    std::string kind = trim(text.substr(0, colon)), rest = text.substr(colon + 1);
    if (kind == "constant") {
        double b = parse_list(rest, 1, "constant field")[0];
        f.b = [b](double) { return b; };
    } else if (kind == "sinusoid") {
        auto v = parse_list(rest, 3, "sinusoid:amplitude,mean,period");
        if (v[2] <= 0.0) throw UsageError("sinusoid period must be positive");
        double a = v[0], m = v[1], w = 2.0 * M_PI / v[2];
        f.b = [a, m, w](double t) { return m + a * std::sin(w * t); };
    } else if (kind == "table") {
        std::ifstream in(trim(rest));
        if (!in) throw UsageError("cannot open field table '" + trim(rest) + "'");
        auto ts = std::make_shared<std::vector<double>>();
        auto bs = std::make_shared<std::vector<double>>();
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
            auto v = parse_list(line, 2, "field table row");
            if (!ts->empty() && v[0] <= ts->back()) throw UsageError("field table times must increase");
            ts->push_back(v[0]);
            bs->push_back(v[1]);
        }
        if (ts->empty()) throw UsageError("field table is empty");
        // piecewise linear, held constant outside the table
        f.b = [ts, bs](double t) {
            if (t <= ts->front()) return bs->front();
            if (t >= ts->back()) return bs->back();
            auto it = std::upper_bound(ts->begin(), ts->end(), t);
            std::size_t k = static_cast<std::size_t>(it - ts->begin());
            double a = (t - (*ts)[k - 1]) / ((*ts)[k] - (*ts)[k - 1]);
            return (1.0 - a) * (*bs)[k - 1] + a * (*bs)[k];
        };
    } else {
        throw UsageError("unknown field kind '" + kind + "'");
    }
    return f;
}

}  // namespace

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream in(norm);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(to_double(tok, what));
    if (expected && out.size() != expected)
        throw UsageError(what + " expects " + std::to_string(expected) + " numbers, got " +
                         std::to_string(out.size()));
    return out;
}

Instance build_instance(const InstanceOptions& o) {
    Instance in;
    int forms = !o.preset.empty() + !o.spins.empty() + !o.gram.empty();
    if (forms > 1) throw UsageError("give exactly one of --preset, --spins, --gram");
    if (!o.preset.empty()) {
        if (!o.couplings.empty()) throw UsageError("--preset fixes the couplings; drop --j");
        auto [name, args] = split_call(o.preset);
        Preset p;
        if (name == "paper-example" && args.empty()) p = paper_example();
        else if (name == "aperiodic") p = aperiodic(args);
        else if (name == "isosceles") p = isosceles(args);
        else throw UsageError("unknown preset '" + o.preset + "'");
        in.j = p.j;
        in.s0 = p.s0;
        in.preset = o.preset;
    } else {
        if (o.couplings.empty()) throw UsageError("couplings missing: use --j j1,j2,j3 or --preset");
        auto v = parse_list(o.couplings, 3, "--j");
        in.j = {v[0], v[1], v[2]};
    }
    if (!o.spins.empty()) {
        auto v = parse_list(o.spins, 9, "--spins");
        SpinConfiguration s;
        for (int mu = 0; mu < 3; ++mu) s.col(mu) = Vec3(v[3 * mu], v[3 * mu + 1], v[3 * mu + 2]);
        if (!is_valid_configuration(s)) throw DomainError("--spins: every spin needs unit length");
        in.s0 = s;
    }
    if (!o.gram.empty()) {
        auto v = parse_list(o.gram, 3, "--gram");
        if (o.orientation != 1 && o.orientation != -1) throw UsageError("--orientation must be +1 or -1");
        GramPoint g{v[0], v[1], v[2], 0.0};
        double d = g.det();
        if (d < -1e-12 || std::fabs(g.u) > 1.0 || std::fabs(g.v) > 1.0 || std::fabs(g.w) > 1.0)
            throw DomainError("--gram point lies outside the Gram set");
        g.delta = o.orientation * std::sqrt(std::max(0.0, d));
        SpinConfiguration s = standard_config(g);
        if (!o.frame.empty()) {
            auto f = parse_list(o.frame, 4, "--frame");
            Vec3 axis(f[0], f[1], f[2]);
            if (axis.norm() == 0.0) throw UsageError("--frame axis must be nonzero");
            s = Rotation::axis_angle(axis.normalized(), f[3]) * s;
        }
        in.s0 = s;
    } else if (!o.frame.empty()) {
        throw UsageError("--frame only applies with --gram");
    }
    if (!o.field.empty()) in.field = parse_field(o.field, o.field_axis);
    return in;
}

double resolve_span(const std::string& span, double period) {
    std::string s = trim(span);
    if (s.empty()) throw UsageError("empty --span");
    if (s.back() == 'T') {
        std::string k = trim(s.substr(0, s.size() - 1));
        double mult = k.empty() ? 1.0 : to_double(k, "--span");
        if (period <= 0.0) throw DomainError("--span in periods needs a periodic instance; give seconds");
        return mult * period;
    }
    return to_double(s, "--span");
}

std::vector<double> sample_times(double span, int samples) {
    if (samples < 0) throw UsageError("--samples must be nonnegative");
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) t[k] = samples == 1 ? 0.0 : span * k / (samples - 1);
    return t;
}

}  // namespace cli
