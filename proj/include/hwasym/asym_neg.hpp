#pragma once

#include <functional>
#include <optional>

#include "hwasym/common.hpp"

namespace hwasym {

double curve_t_star(double X, double X0);
double X_cusp(double X0);
double t_cusp(double X0);
// Common slope dt/dX of t_c and t_d at the cusp.
double cusp_slope(double X0);
double t_d_at_zero(double X0);

struct Caustics {
    double t_c = 0.0;
    double t_d = 0.0;
    double alpha_c = 0.0;
    double alpha_d = 0.0;
};
Caustics curves_caustic(double X, double X0);

// Intersection (X*, t**) of t* and t_d; cached per X0.
struct StarPoint {
    double X_star = 0.0;
    double t_starstar = 0.0;
};
StarPoint star_point(double X0);

struct NegCurves {
    double t_star = nan;
    double t_c = nan;
    double t_d = nan;
    double alpha_c = nan;
    double alpha_d = nan;
    double X_cusp = 0.0;
    double t_cusp = 0.0;
    double X_star = 0.0;
    double t_starstar = 0.0;
};
NegCurves neg_curves(double X, double X0);

enum class NegLabel { I, II, III, IV, V, VI, VII, t_star_layer, cusp_layer, T_scale };
std::string to_string(NegLabel l);

struct NegConfig {
    double star_window = 0.25;   // |t - t*| <= K eps^{1/3}
    double cusp_xi = 1.5;        // |xi| <= cusp_xi and |eta| <= cusp_eta
    double cusp_eta = 2.5;
    double t_scale_ratio = 0.05; // saddle below ratio * eps
};

struct NegRegime {
    NegLabel label = NegLabel::I;
    NegLabel region = NegLabel::I; // underlying open region I..VII
};

// Pure set membership in Regions I..VII.
NegLabel region_of(double X, double t, double X0);
NegRegime classify_region(double X, double t, double X0, const NegConfig& cfg = {}, double eps = 0.0);

// Saddle equation in phi (phi > -(1+X)^2/4) and its unique root.
double phis_residual(double phi, double X, double t, double X0);
std::optional<double> solve_phis(double X, double t, double X0);

double ftilde(double z, double X, double t, double X0);
double ftilde_prime(double z, double X, double t, double X0);
double ftilde_second(double z, double X, double X0);

// Zeros z_- <= z_+ of ftilde''; absent for X < X_cusp.
struct ZInflection {
    bool real = false;
    double z_minus = 0.0;
    double z_plus = 0.0;
};
ZInflection z_inflections(double X, double X0);
double z_at_cusp(double X0);

// All zeros of ftilde' on (0, z_hi).
std::vector<double> solve_zroots(double X, double t, double X0, double z_hi);

struct SaddleRoots {
    std::optional<double> phi_s;
    std::vector<double> z_roots;
};
// Roots on the range the region calls for: (0, -phi_s) when phi_s < 0 exists, else (0, (1+X)^2/4).
SaddleRoots solve_saddles(double X, double t, double X0);

struct SaddleTerm {
    double F = 0.0;
    double logG = 0.0;
};
SaddleTerm F_and_G(double X, double t, double phi_s, double X0);
SaddleTerm ftilde_and_Gtilde(double X, double t, double z, double X0);

AsymptoticDensity density_asym_neg(double X, double t, const ModelParams& m, const NegConfig& cfg = {});

double log_density_t_star_layer(double X, double t, const ModelParams& m);
double log_density_T_scale_neg(double X, double T, const ModelParams& m);
// X = -1 + e^{X0 - t} + sqrt(eps) Delta.
double log_density_gaussian_layer(double Delta, double t, const ModelParams& m);

double curve_t_gamma(double X, double X0);

double cusp_J(double xi, double eta, double X0);
double log_cusp_density(double xi, double eta, const ModelParams& m);
// (xi, eta) of a point near the cusp.
std::pair<double, double> cusp_coordinates(double X, double t, const ModelParams& m);

// Sign changes of f over n points in [lo, hi], uniform or log-spaced.
int count_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n, bool log_spacing);

} // namespace hwasym
