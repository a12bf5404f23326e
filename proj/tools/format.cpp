#include "format.hpp"

#include <cmath>
#include <cstdio>

namespace cli {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void emit(const nlohmann::json& j, std::string& out, int depth) {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(it.key()).dump() + ": ";
                emit(it.value(), out, depth + 1);
            }
            out += "\n" + close + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // short numeric rows stay on one line
            bool flat = j.size() <= 12;
            for (const auto& e : j) flat = flat && e.is_primitive();
            if (flat) {
                out += "[";
                for (std::size_t k = 0; k < j.size(); ++k) {
                    if (k) out += ", ";
                    emit(j[k], out, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) out += ",\n";
                out += pad;
                emit(j[k], out, depth + 1);
            }
            out += "\n" + close + "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            double x = j.get<double>();
            out += std::isfinite(x) ? num(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

std::string csv_row(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ",";
        out += num(values[k]);
    }
    out += "\n";
    return out;
}

std::string csv_header(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (k) out += ",";
        out += names[k];
    }
    out += "\n";
    return out;
}

}  // namespace cli
