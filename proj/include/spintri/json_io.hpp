#pragma once

#include <json.hpp>

#include "spintri/core_model.hpp"

namespace spintri {

// Matrices serialize row-major: j[i][mu] = s(i, mu).
nlohmann::json to_json_matrix(const Mat3& m);
Mat3 matrix_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const GramPoint& g);
void from_json(const nlohmann::json& j, GramPoint& g);
void to_json(nlohmann::json& j, const ConservedValues& cv);
void from_json(const nlohmann::json& j, ConservedValues& cv);
void to_json(nlohmann::json& j, const Couplings& c);
void from_json(const nlohmann::json& j, Couplings& c);

}  // namespace spintri
