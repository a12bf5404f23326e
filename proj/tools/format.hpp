#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

// %.17g; non-finite values print as nan / inf / -inf.
std::string num(double x);

// Indented JSON with every double at 17 significant digits; non-finite doubles become null.
std::string dump_json(const nlohmann::json& j);

std::string csv_row(const std::vector<double>& values);
std::string csv_header(const std::vector<std::string>& names);

}  // namespace cli
