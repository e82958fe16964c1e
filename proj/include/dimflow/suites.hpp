#pragma once

#include <string>
#include <vector>

namespace dimflow {

// One acceptance criterion: exact formula reproduction or an oracle-backed
// numerical experiment, with its own wall-clock budget.
struct SuiteResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::vector<std::string> details;  // measured values against tolerances
    std::string line() const;          // "[PASS] 4 counting (0.8 s): ..."
};

struct SuiteInfo {
    int id;
    std::string name;
    std::string summary;
    double budget_seconds;
};
const std::vector<SuiteInfo>& suite_catalog();

// Runs a suite by name or by number ("counting" or "4"); UnknownSuite
// otherwise.
SuiteResult run_suite(const std::string& name, unsigned long long seed = 1);

}  // namespace dimflow
