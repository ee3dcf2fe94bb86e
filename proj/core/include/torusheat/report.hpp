#ifndef TORUSHEAT_REPORT_HPP
#define TORUSHEAT_REPORT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace torusheat {

/// Plot-ready tabular data, written as TSV.
struct TsvTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    void write(std::ostream& os) const;
};

/// Deterministic numeric formatting for reports and tables.
std::string fmt(double v);
std::string fmt(std::size_t v);
std::string fmt(int v);

/// One asserted inequality inside an experiment: slack >= 0 means satisfied.
struct CheckResult {
    std::string name;
    bool passed = false;
    double slack = 0.0;
    std::string witness;  // empty when passed
};

/// Structured result of a verification run: the asserted inequalities with
/// their slacks, provenance keys (seed, resolution, ...), and data tables.
struct ExperimentReport {
    std::string experiment;
    bool passed = true;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> info;
    std::vector<TsvTable> tables;

    void note(const std::string& key, const std::string& value) { info.emplace_back(key, value); }
    void require(const std::string& name, double slack, const std::string& witness = "");
    /// Smallest slack over all checks (infinity when none).
    double worst_slack() const;

    /// JSON encoding (stable key order, no timestamps).
    std::string to_json() const;
};

} // namespace torusheat

#endif
