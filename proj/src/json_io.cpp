#include "spintri/json_io.hpp"

namespace spintri {

nlohmann::json to_json_matrix(const Mat3& m) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) out.push_back({m(i, 0), m(i, 1), m(i, 2)});
    return out;
}

Mat3 matrix_from_json(const nlohmann::json& j) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m(i, k) = j.at(i).at(k).get<double>();
    return m;
}

void to_json(nlohmann::json& j, const GramPoint& g) {
    j = {{"u", g.u}, {"v", g.v}, {"w", g.w}, {"delta", g.delta}};
}

void from_json(const nlohmann::json& j, GramPoint& g) {
    g.u = j.at("u").get<double>();
    g.v = j.at("v").get<double>();
    g.w = j.at("w").get<double>();
    g.delta = j.at("delta").get<double>();
}

void to_json(nlohmann::json& j, const ConservedValues& cv) {
    j = {{"epsilon", cv.epsilon}, {"sigma", cv.sigma}, {"sigma3", cv.sigma3}, {"s_len", cv.s_len}};
}

void from_json(const nlohmann::json& j, ConservedValues& cv) {
    cv = ConservedValues::make(j.at("epsilon").get<double>(), j.at("sigma").get<double>(),
                               j.at("sigma3").get<double>());
}

void to_json(nlohmann::json& j, const Couplings& c) { j = {{"j1", c.j1}, {"j2", c.j2}, {"j3", c.j3}}; }

void from_json(const nlohmann::json& j, Couplings& c) {
    c.j1 = j.at("j1").get<double>();
    c.j2 = j.at("j2").get<double>();
    c.j3 = j.at("j3").get<double>();
}

}  // namespace spintri
