#include "torusheat/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace torusheat {

void TsvTable::write(std::ostream& os) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 < columns.size() ? '\t' : '\n');
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            os << row[c] << (c + 1 < row.size() ? '\t' : '\n');
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

void ExperimentReport::require(const std::string& name, double slack, const std::string& witness) {
    CheckResult c;
    c.name = name;
    c.slack = slack;
    c.passed = slack >= 0.0 && std::isfinite(slack);
    c.witness = c.passed ? "" : witness;
    passed = passed && c.passed;
    checks.push_back(std::move(c));
}

double ExperimentReport::worst_slack() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) w = std::min(w, c.slack);
    return w;
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["passed"] = passed;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
    for (const auto& [k, v] : info) provenance[k] = v;
    j["provenance"] = provenance;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["slack"] = c.slack;
        if (!c.witness.empty()) jc["witness"] = c.witness;
        j["checks"].push_back(jc);
    }
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = t.rows;
        j["tables"].push_back(jt);
    }
    return j.dump(2);
}

} // namespace torusheat
