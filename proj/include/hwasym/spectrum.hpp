#pragma once

#include "hwasym/common.hpp"
#include "hwasym/exact.hpp"

namespace hwasym {

struct Pole {
    int N = 0;
    double theta = 0.0;
    double residue = 0.0;
    double asym_offset = 0.0;
};

// sqrt(theta + beta^2/4) D - D' at real theta, scaled by exp(-ref); its roots are the poles.
double pole_numerator(double theta, const ModelParams& m, double ref = 0.0);

std::vector<Pole> find_poles(const ModelParams& m, int max_n);
double pole_asym(int N, const ModelParams& m);
// Lowest-order offset e^{-beta^2/2} beta^{2N-3} / (sqrt(2 pi) (N-1)!)
double pole_asym_leading(int N, const ModelParams& m);
double residue_h(const Pole& pole, const ModelParams& m);
double residue_asym(int N, const ModelParams& m);
double beta_star();
double relaxation_rate(double beta);

} // namespace hwasym
