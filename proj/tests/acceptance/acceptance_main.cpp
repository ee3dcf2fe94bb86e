// Runs the full verification battery and prints one PASS/FAIL line per
// criterion. Exit code 0 only when every criterion holds.

#include <iostream>

#include "torusheat/suite.hpp"

int main() {
    const torusheat::SuiteResult result = torusheat::run_acceptance_suite(std::cout);
    return result.passed ? 0 : 1;
}
