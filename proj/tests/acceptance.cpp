#include <cstdio>
#include <cstring>
#include <fstream>

#include "validate.hpp"

int main(int argc, char** argv) {
    bool quick = false;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0)
            quick = true;
        else
            only.push_back(std::atoi(argv[i]));
    }
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    std::vector<hwasym::cli::CheckResult> all;
    for (int id = 1; id <= 11; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        for (const auto& r : hwasym::cli::run_acceptance(quick, {id})) {
            std::printf("[%s] %2d %-28s measured %.3e tol %.1e  %.1fs/%.0fs  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.measured, r.tolerance, r.seconds, r.budget, r.detail.c_str());
            all.push_back(r);
        }
    }
    std::ofstream("acceptance_report.json") << hwasym::cli::report_json(all, quick);
    for (const auto& r : all)
        if (!r.pass) return 1;
    return 0;
}
