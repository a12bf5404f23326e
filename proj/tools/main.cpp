#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "spintri/errors.hpp"

int main(int argc, char** argv) {
    cli::Options o;
    CLI::App app{"Classical Heisenberg spin triangle: semi-analytic trajectories and checks", "spintri"};
    app.set_config("--config", "", "Flat key=value file; command-line flags override it");
    app.require_subcommand(1);

    auto& in = o.inst;
    const std::string inst = "Instance";
    app.add_option("--preset", in.preset, "paper-example | aperiodic(lambda) | isosceles(j,j_odd,S,alpha)")->join(',')->group(inst);
    app.add_option("--j", in.couplings, "Couplings j1,j2,j3")->join(',')->group(inst);
    app.add_option("--spins", in.spins, "Nine numbers: s1, s2, s3 components")->join(',')->group(inst);
    app.add_option("--gram", in.gram, "Gram point u,v,w (u = s2.s3, v = s3.s1, w = s1.s2)")->join(',')->group(inst);
    app.add_option("--orientation", in.orientation, "Sign of det s for --gram")->group(inst);
    app.add_option("--frame", in.frame, "Rotation ax,ay,az,angle applied to the --gram configuration")->join(',')->group(inst);
    app.add_option("--field", in.field, "constant:B | sinusoid:amplitude,mean,period | table:path")->join(',')->group(inst);
    app.add_option("--field-axis", in.field_axis, "Field direction x,y,z")->join(',')->group(inst);

    const std::string outg = "Output";
    app.add_option("--span", in.span, "Time span in seconds, or kT for k internal periods")->group(outg);
    app.add_option("--samples", in.samples, "Number of equally spaced samples including both ends")->group(outg);
    app.add_option("--format", o.format, "csv | json")->group(outg);
    app.add_option("-o,--output", o.output, "Write to a file instead of standard output")->group(outg);
    app.add_flag("--internal", o.internal, "Append u,v,w,delta columns")->group(outg);

    const std::string ora = "Oracle";
    app.add_option("--rtol", o.rtol, "Relative tolerance")->group(ora);
    app.add_option("--atol", o.atol, "Absolute tolerance")->group(ora);
    app.add_option("--max-step", o.max_step, "Step cap, 0 for none")->group(ora);
    app.add_flag("--renormalize", o.renormalize, "Project spins back to unit length after each step")->group(ora);

    const std::string other = "Command options";
    app.add_option("--tol", o.tol, "compare/selftest pass threshold on max componentwise deviation")->group(other);
    app.add_option("--seed", o.seed, "selftest random seed")->group(other);
    app.add_option("--count", o.count, "selftest instance count")->group(other);
    app.add_flag("--i1", o.sweep_i1, "sweep: epsilon,T,i1,dI1_deps")->group(other);
    app.add_flag("--alpha", o.sweep_alpha, "sweep: epsilon,alpha_raw,alpha_smoothed")->group(other);
    app.add_option("--sigma", o.sigma, "sweep: fixed sigma (default from the instance)")->group(other);
    app.add_option("--points", o.points, "sweep: energy grid size")->group(other);
    app.add_option("--case", o.special_case,
                   "special: isosceles | equilateral | face | stationary-gram | aperiodic | separatrix | "
                   "stationary-states")
        ->group(other);
    app.add_option("--lambda", o.lambda, "special --case aperiodic: normal-form coupling")->group(other);
    app.add_option("--m", o.m, "elliptic: parameter m = k^2")->group(other);
    app.add_option("--u", o.u, "elliptic: argument of sn, cn, dn")->group(other);
    app.add_option("--cubic", o.cubic, "elliptic: g2,g3 of 4x^3 - g2 x - g3")->join(',')->group(other);

    using Cmd = int (*)(const cli::Options&, std::string&);
    Cmd selected = nullptr;
    auto sub = [&](const char* name, const char* help, Cmd fn) {
        app.add_subcommand(name, help)->fallthrough()->callback([&selected, fn] { selected = fn; });
    };
    sub("classify", "Case label, conserved values and energy range (JSON)", cli::cmd_classify);
    sub("simulate", "Semi-analytic trajectory", cli::cmd_simulate);
    sub("integrate", "Numerical reference trajectory", cli::cmd_integrate);
    sub("compare", "Semi-analytic against numerical; exit 4 above --tol", cli::cmd_compare);
    sub("actions", "Action variables and frequencies (JSON)", cli::cmd_actions);
    sub("sweep", "Energy sweep at fixed sigma (CSV)", cli::cmd_sweep);
    sub("special", "Closed-form special cases", cli::cmd_special);
    sub("elliptic", "Elliptic function values (JSON)", cli::cmd_elliptic);
    sub("selftest", "Random generic instances against the numerical reference", cli::cmd_selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string out;
    int code = 0;
    try {
        code = selected(o, out);
    } catch (const cli::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const spintri::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    if (o.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << o.output << "\n";
            return 2;
        }
        f << out;
    }
    return code;
}
