#pragma once

#include "hwasym/common.hpp"
#include "hwasym/specfun.hpp"

namespace hwasym {

// sqrt(theta + beta^2/4), principal branch.
cplx branch_sqrt(cplx theta, const ModelParams& m);

// D_{-theta}(-beta) and its argument derivative.
PcfValue pcf_at_minus_beta(cplx theta, const ModelParams& m);

// D'_{-theta}(-beta) / D_{-theta}(-beta)
cplx r_beta(cplx theta, const ModelParams& m);

// Laplace transform of the density split as p1 (free Brownian part, x > 0 only) + p2.
struct TransformParts {
    cplx p1{0.0, 0.0};
    cplx p2{0.0, 0.0};
    cplx total() const { return p1 + p2; }
};
TransformParts phat_parts(double x, cplx theta, const ModelParams& m);
// Value of the x < 0 expression continued to any x (used for the x = 0 interface check).
cplx phat_left(double x, cplx theta, const ModelParams& m);
cplx phat(double x, cplx theta, const ModelParams& m);

double log_steady_constant(double beta);
double steady_density(double x, const ModelParams& m);
double p_bm(double X, double t, const ModelParams& m);
double fluid(double t, const ModelParams& m);

} // namespace hwasym
