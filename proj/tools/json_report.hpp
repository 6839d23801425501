// json_report.hpp: JSON rendering of records for the CLI

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmsf/report.hpp"
#include "tmsf/sweep.hpp"

namespace tmsf::cli {

using json = nlohmann::ordered_json;

// Non-finite numbers become the strings "inf", "-inf", "nan"; not-applicable cells become null.
inline json to_json(const sweep::Value& v) {
    struct Visitor {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(double x) const { return std::isfinite(x) ? json(x) : json(report::format_number(x)); }
        json operator()(const std::string& s) const { return s; }
        json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, v);
}

inline json to_json(const sweep::Record& r) {
    json o = json::object();
    for (const auto& [name, v] : r.cells) o[name] = to_json(v);
    return o;
}

inline json number(double x) { return std::isfinite(x) ? json(x) : json(report::format_number(x)); }

} // namespace tmsf::cli
