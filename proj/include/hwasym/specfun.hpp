#pragma once

#include "hwasym/common.hpp"

namespace hwasym {

// m * exp(e); keeps magnitudes far outside double range.
struct Scaled {
    cplx m{0.0, 0.0};
    double e = 0.0;

    cplx value() const { return m * std::exp(e); }
    cplx log() const { return std::log(m) + e; }
};

cplx lgamma_c(cplx w);
Scaled rgamma_scaled(cplx w);
cplx rgamma(cplx w);
cplx sinpi(cplx w);

enum class PcfRegime { direct_quadrature, ode, symmetry, saddle, reflected_saddle, airy_layer };
const char* to_string(PcfRegime r);

// D and D' sharing the log scale e.
struct PcfValue {
    cplx d{0.0, 0.0};
    cplx dd{0.0, 0.0};
    double e = 0.0;
    PcfRegime regime = PcfRegime::ode;
    double err = 0.0;

    cplx value() const { return d * std::exp(e); }
    cplx deriv() const { return dd * std::exp(e); }
    // D'/D
    cplx log_deriv() const { return dd / d; }
};

// Weber equation y'' = (z^2/4 + c) y, Taylor-series stepping with log rescaling.
struct WeberState {
    cplx y{1.0, 0.0};
    cplx dy{0.0, 0.0};
    double e = 0.0;
};
void weber_integrate(cplx c, double za, double zb, WeberState& s);

// D_p(z) and D_p'(z) by the Weber ODE normalised at z = 0.
PcfValue pcf_ode(cplx p, double z);
// D_nu(i z) and d/dz of it.
PcfValue pcf_imag(cplx nu, double z);
// D_p(z) by the vertical contour integral through the dominant saddle.
PcfValue pcf_quadrature(cplx p, double z);
// D_{-theta}(-z) for z > 0 from D_{-theta}(z) and D_{theta-1}(iz); derivative is w.r.t. the argument -z.
PcfValue pcf_D_symmetry_eval(cplx theta, double z);
// D and D' by the most stable route for (p, z).
PcfValue pcf_eval(cplx p, double z);

cplx pcf_D(cplx order, double z);
cplx pcf_D_symmetry(cplx theta, double z);

// Large-parameter forms of D_{-phi/eps}(Z/sqrt(eps)).
struct PcfAsymConfig {
    double airy_window = 8.0;
};
struct PcfAsym {
    LogValue value;
    PcfRegime regime = PcfRegime::saddle;
};
LogValue pcf_saddle(double phi, double Z, double eps);
LogValue pcf_reflected_saddle(double phi, double Z, double eps, double theta);
PcfAsym pcf_D_asym(double phi, double Z, double eps, double theta, const PcfAsymConfig& cfg = {});

// Ratio D_{-phi/eps}(-(1+X)/sqrt eps) / D_{-phi/eps}(-1/sqrt eps) ~ prefactor * exp(exponent / eps).
struct RatioAsym {
    double exponent = 0.0;
    double prefactor = 1.0;
};
RatioAsym pcf_ratio_asym(double phi, double X, double eps, double pole_margin = 1e-3);

// phi = -(1+X)^2/4 + ((1+X)/2)^{2/3} eps^{2/3} delta
double airy_layer_phi(double X, double delta, double eps);
LogValue pcf_airy_layer(double X, double delta, double eps, double theta, double zero_floor = 1e-12);

LogValue hermite_He(int N, double Z);
double hermite_He_quadrature(int N, double Z);

enum class HermiteForm { saddle, airy };
struct HermiteAsym {
    LogValue value;
    HermiteForm form = HermiteForm::saddle;
    double W = 0.0;
};
HermiteAsym hermite_asym(int N, double X, double eps, double margin = 0.1, double airy_width = 3.0);

enum class AiryKind { Ai, Bi };
double airy(AiryKind kind, double x);
double airy_prime(AiryKind kind, double x);

} // namespace hwasym
