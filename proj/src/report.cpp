#include "rqcert/report.hpp"

#include <cmath>

#include "rqcert/matrix_market.hpp"

namespace rqcert {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json ingredients_json(const std::vector<std::pair<std::string, double>>& items) {
    Json out = Json::object();
    for (const auto& [k, v] : items) out[k] = number(v);
    return out;
}

void write(const Json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(k).dump() + ": ";
                write(v, out, indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                write(v, out, indent, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

Json to_json(const BoundReport& r) {
    Json j;
    j["bound_name"] = r.bound_name;
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["holds"] = r.holds;
    j["equality"] = r.equality;
    j["skipped"] = false;
    j["reason"] = nullptr;
    j["ingredients"] = ingredients_json(r.ingredients);
    return j;
}

Json skipped_json(const std::string& bound_name, const std::string& reason) {
    Json j;
    j["bound_name"] = bound_name;
    j["lhs"] = nullptr;
    j["rhs"] = nullptr;
    j["holds"] = nullptr;
    j["equality"] = nullptr;
    j["skipped"] = true;
    j["reason"] = reason;
    j["ingredients"] = Json::object();
    return j;
}

Json to_json(const InvariantTally& t) {
    Json j;
    j["name"] = t.name;
    j["checks"] = t.checks;
    j["violations"] = t.violations;
    j["worst"] = number(t.worst);
    j["tolerance"] = t.tolerance;
    return j;
}

Json to_json(const ExperimentResult& e) {
    Json j;
    j["name"] = e.name;
    j["pass"] = e.pass;
    j["notes"] = e.notes;
    j["scalars"] = ingredients_json(e.scalars);
    Json tallies = Json::array();
    for (const auto& t : e.tallies) tallies.push_back(to_json(t));
    j["tallies"] = std::move(tallies);
    return j;
}

std::string dump(const Json& j, int indent) {
    std::string out;
    write(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace rqcert
