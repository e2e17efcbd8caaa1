#pragma once

#include "hwasym/common.hpp"

namespace hwasym {

// Laplace-sum exponent f(z; X, t) and prefactor g(z) of the residue sum for X >= 0.
double f_pos(double z, double X, double t, double X0);
double fprime_pos(double z, double X, double t, double X0);
double fsecond_pos(double z, double X, double X0);
double g_pos(double z);

struct ZStar {
    double z_star = 0.0;
    double z_star2 = 0.0;
    double phi_ss = 0.0;
};

// Critical points z* < z~ < z** of f on (0, -phi**); requires t >= t_+.
ZStar solve_zstar(double X, double t, double X0);
double zstar_residual(double z, double X, double t, double X0);

double curve_t_plus(double X, double X0);
double curve_t1(double X, double X0);
double curve_t2(double X, double X0);
// Residuals of the closed U-forms at a candidate t.
double t1_uform_residual(double X, double X0, double t);
double t2_uform_residual(double X, double X0, double t);

enum class PosLabel { i, ii, iii, T_scale };
std::string to_string(PosLabel l);

struct PosRegime {
    PosLabel label = PosLabel::i;
    double t1 = 0.0;
    double t2 = 0.0;
    double t_plus = 0.0;
    bool boundary = false;
};

struct PosConfig {
    double blend = 0.05;
    double t_scale_ratio = 0.05; // regime iii switches to the T-scale form when z* < ratio * eps
};

PosRegime classify_pos(double X, double t, double X0, const PosConfig& cfg = {}, double eps = 0.0);
AsymptoticDensity density_asym_pos(double X, double t, const ModelParams& m, const PosConfig& cfg = {});
double density_T_scale_pos(double X, double T, const ModelParams& m);

// Leading-order residue sum, split into endpoint and interior-maximum parts (log scale).
struct SumResidueAsym {
    std::string form;
    double log_endpoint = -inf;
    double log_saddle = -inf;

    double log_value() const { return log_sum(log_endpoint, log_saddle); }
    double value() const { return std::exp(log_value()); }
};
SumResidueAsym sum_residue_asym(double X, double t, const ModelParams& m);
// Saddle estimate of the shifted-contour integral; equals the reflected-ray term.
double log_int_asym_pos(double X, double t, const ModelParams& m);

} // namespace hwasym
