#pragma once

#include <string>
#include <vector>

namespace hwasym::cli {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    double budget = 0.0;
    std::string detail;
};

// Acceptance criteria 1..11; quick uses fewer paths for 5 and drops beta = 12 from 6.
std::vector<CheckResult> run_acceptance(bool quick, const std::vector<int>& only = {});
std::string report_json(const std::vector<CheckResult>& r, bool quick);

} // namespace hwasym::cli
