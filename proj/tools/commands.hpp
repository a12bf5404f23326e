#pragma once

#include <string>

#include "instance.hpp"

namespace cli {

struct Options {
    InstanceOptions inst;
    std::string format = "csv";
    std::string output;
    bool internal = false;
    // oracle
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.0;
    bool renormalize = false;
    // compare / selftest
    double tol = 1e-5;
    unsigned seed = 1;
    int count = 5;
    // sweep
    bool sweep_i1 = false;
    bool sweep_alpha = false;
    std::string sigma;
    int points = 50;
    // special
    std::string special_case;
    double lambda = 0.5;
    // elliptic
    std::string m, u, cubic;
};

// Each returns the process exit code and writes its result to `out`.
int cmd_classify(const Options& o, std::string& out);
int cmd_simulate(const Options& o, std::string& out);
int cmd_integrate(const Options& o, std::string& out);
int cmd_compare(const Options& o, std::string& out);
int cmd_actions(const Options& o, std::string& out);
int cmd_sweep(const Options& o, std::string& out);
int cmd_special(const Options& o, std::string& out);
int cmd_elliptic(const Options& o, std::string& out);
int cmd_selftest(const Options& o, std::string& out);

constexpr int kSchemaVersion = 1;

}  // namespace cli
