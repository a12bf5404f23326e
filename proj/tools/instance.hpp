#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spintri/core_model.hpp"

namespace cli {

// Bad command-line or config input; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw option strings as they arrive from flags or the config file.
struct InstanceOptions {
    std::string preset;
    std::string couplings;    // "j1,j2,j3"
    std::string spins;        // nine numbers, s1 then s2 then s3
    std::string gram;         // "u,v,w"
    int orientation = 1;      // sign of delta for --gram
    std::string frame;        // "ax,ay,az,angle" applied after the standard configuration
    std::string field;        // constant:B | sinusoid:amplitude,mean,period | table:path
    std::string field_axis = "0,0,1";
    std::string span = "1T";  // seconds, or a multiple of the internal period with suffix T
    int samples = 201;
};

struct FieldSpec {
    std::function<double(double)> b;
    spintri::Vec3 e = spintri::Vec3::UnitZ();
};

struct Instance {
    spintri::Couplings j;
    std::optional<spintri::SpinConfiguration> s0;
    std::optional<FieldSpec> field;
    std::string preset;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what);

// Couplings are required; the initial condition is optional here and checked by the caller.
Instance build_instance(const InstanceOptions& o);

// Resolve "<k>T" against the internal period; period 0 means none is defined.
double resolve_span(const std::string& span, double period);

std::vector<double> sample_times(double span, int samples);

}  // namespace cli
