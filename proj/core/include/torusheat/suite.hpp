#ifndef TORUSHEAT_SUITE_HPP
#define TORUSHEAT_SUITE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace torusheat {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteResult {
    std::string suite;
    std::vector<CriterionResult> criteria;
    bool passed = true;
    std::string to_json() const;
};

/// Full verification battery, one fixed criterion per entry; prints one
/// PASS/FAIL line per criterion to `log` as it runs.
SuiteResult run_acceptance_suite(std::ostream& log);

/// Sixty-second smoke subset.
SuiteResult run_quick_suite(std::ostream& log);

} // namespace torusheat

#endif
