#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "output.hpp"

namespace hwasym::cli {

// Bad flags or a point outside a method's range; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "a", "a,b,c" or "start:stop:count".
std::vector<double> parse_values(const std::string& spec);

struct DensityArgs {
    double beta = 0.0;
    double X0 = 0.0;
    std::vector<double> X;
    std::vector<double> t;
    std::string method = "asymptotic";
    std::uint64_t seed = 0x5eed2024ULL;
    long paths = 200000;
};
Table cmd_density(const DensityArgs& a);

Table cmd_curves(const std::string& side, double X0, const std::vector<double>& X);
Table cmd_spectrum(double beta, double x0, int n);
Table cmd_rays(double X0, const std::vector<double>& alphas, double t_max, int points);

// Named CSV datasets for one figure.
std::vector<std::pair<std::string, Table>> figure_data(int n);

} // namespace hwasym::cli
