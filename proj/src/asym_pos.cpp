#include "hwasym/asym_pos.hpp"

#include <algorithm>
#include <functional>

namespace hwasym {

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_pos(double X, double X0) {
    if (!(X >= 0)) throw DomainError("X must be nonnegative on the positive side");
    if (!(X0 > 0)) throw DomainError("X0 must be positive");
}

// f(z*) written with the critical-point equation substituted.
double f_at_critical(double z, double X, double X0) {
    double S = X + X0, U = std::sqrt(1.0 - 4.0 * z);
    return -0.5 * (S + 1.0) * U + 0.5 * (X0 - X) - S * z / U;
}

double log_returned_prefactor(double z, double X, double X0) {
    double S = X + X0, U = std::sqrt(1.0 - 4.0 * z);
    double d = U * U - 2.0 * S * z;
    if (!(d > 0)) throw NumericError("returned-ray prefactor: 1-4z-2(X+X0)z <= 0");
    return -std::log(2.0 * std::sqrt(2.0 * pi)) + 0.5 * std::log(U) + std::log1p(U) - 0.5 * std::log(d);
}

template <class Delta>
double solve_matching(double X, double X0, Delta delta, const char* name) {
    double tp = curve_t_plus(X, X0);
    double lo = tp;
    double dlo = delta(lo);
    if (dlo > 0) throw NumericError(std::string(name) + ": matching condition already satisfied at t_+");
    double hi = lo;
    for (int k = 0; k < 400; ++k) {
        hi = lo + 0.05 * std::max(1.0, lo);
        if (delta(hi) > 0) break;
        lo = hi;
        if (k == 399) throw NumericError(std::string(name) + ": no sign change of the matching condition");
    }
    return bisect(delta, lo, hi);
}

} // namespace

double f_pos(double z, double X, double t, double X0) {
    double S = X + X0, U = std::sqrt(1.0 - 4.0 * z);
    return -z * t - 0.5 * S * U + 0.5 * (X0 - X) - 0.5 * U + 2.0 * z * std::log((1.0 + U) / (2.0 * std::sqrt(z)));
}

double fprime_pos(double z, double X, double t, double X0) {
    double U = std::sqrt(1.0 - 4.0 * z);
    return -t + (X + X0) / U + 2.0 * std::log((1.0 + U) / (2.0 * std::sqrt(z)));
}

double fsecond_pos(double z, double X, double X0) {
    double U = std::sqrt(1.0 - 4.0 * z);
    return 2.0 * (X + X0) / (U * U * U) - 1.0 / (z * U);
}

double g_pos(double z) {
    double U = std::sqrt(1.0 - 4.0 * z);
    return (1.0 + U) / (4.0 * pi * U * std::sqrt(z));
}

double zstar_residual(double z, double X, double t, double X0) { return fprime_pos(z, X, t, X0); }

double curve_t_plus(double X, double X0) {
    check_pos(X, X0);
    double S = X + X0;
    return std::sqrt(S * (S + 2.0)) + 2.0 * std::log((std::sqrt(S + 2.0) + std::sqrt(S)) / std::sqrt(2.0));
}

ZStar solve_zstar(double X, double t, double X0) {
    check_pos(X, X0);
    double S = X + X0;
    double tp = curve_t_plus(X, X0);
    ZStar r;
    r.phi_ss = S * S / (4.0 * t * t) - 0.25;
    double zt = 1.0 / (2.0 * S + 4.0);
    if (t < tp * (1.0 - 1e-14))
        throw DomainError("solve_zstar: no critical point for t <= t_+ = " + std::to_string(tp));
    double fz = fprime_pos(zt, X, t, X0);
    if (fz >= 0.0) {
        r.z_star = r.z_star2 = zt;
        return r;
    }
    // z* may be as small as e^{-t}; bracket in log z.
    auto h = [&](double u) { return fprime_pos(std::exp(u), X, t, X0); };
    double ulo = std::log(zt) - 1.0;
    while (h(ulo) <= 0.0) {
        ulo -= 0.5 * (std::fabs(ulo) + 1);
        if (ulo < -700.0) throw NumericError("solve_zstar: z* underflows");
    }
    r.z_star = std::exp(bisect(h, ulo, std::log(zt)));
    double zmax = -r.phi_ss;
    r.z_star2 = bisect([&](double z) { return fprime_pos(z, X, t, X0); }, zt, zmax);
    return r;
}

double curve_t1(double X, double X0) {
    check_pos(X, X0);
    double S = X + X0;
    auto delta = [&](double t) {
        ZStar z = solve_zstar(X, t, X0);
        return f_at_critical(z.z_star, X, X0) + X + (t - S) * (t - S) / (4.0 * t);
    };
    return solve_matching(X, X0, delta, "curve_t1");
}

double curve_t2(double X, double X0) {
    check_pos(X, X0);
    auto delta = [&](double t) {
        ZStar z = solve_zstar(X, t, X0);
        double d = t + X - X0;
        return f_at_critical(z.z_star, X, X0) + d * d / (4.0 * t);
    };
    return solve_matching(X, X0, delta, "curve_t2");
}

namespace {

double uform_residual(double X, double X0, double t, double q) {
    double S = X + X0;
    double c = t + q * q / t;
    double disc = c * c - 4.0 * S * (S + 2.0);
    if (disc < 0) return std::nan("");
    double r = std::sqrt(disc);
    double num = 2.0 * (S + 2.0) + c + r, den = 2.0 * (S + 2.0) - c - r;
    if (!(den > 0)) return std::nan("");
    return q * q / t - r + 2.0 * std::log(num / den) - t;
}

} // namespace

double t1_uform_residual(double X, double X0, double t) { return uform_residual(X, X0, t, X + X0); }
double t2_uform_residual(double X, double X0, double t) { return uform_residual(X, X0, t, X - X0); }

std::string to_string(PosLabel l) {
    switch (l) {
    case PosLabel::i: return "i";
    case PosLabel::ii: return "ii";
    case PosLabel::iii: return "iii";
    case PosLabel::T_scale: return "T-scale";
    }
    return "?";
}

PosRegime classify_pos(double X, double t, double X0, const PosConfig& cfg, double eps) {
    check_pos(X, X0);
    if (!(t > 0)) throw DomainError("t must be positive");
    PosRegime r;
    r.t_plus = curve_t_plus(X, X0);
    r.t1 = curve_t1(X, X0);
    r.t2 = curve_t2(X, X0);
    const double w = cfg.blend;
    r.boundary = std::fabs(t - r.t1) <= w || std::fabs(t - r.t2) <= w;
    if (t < r.t1)
        r.label = PosLabel::i;
    else if (t < r.t2)
        r.label = PosLabel::ii;
    else
        r.label = PosLabel::iii;
    if (r.label == PosLabel::iii && !r.boundary && eps > 0) {
        ZStar z = solve_zstar(X, t, X0);
        if (z.z_star < cfg.t_scale_ratio * eps) r.label = PosLabel::T_scale;
    }
    return r;
}

AsymptoticDensity density_asym_pos(double X, double t, const ModelParams& m, const PosConfig& cfg) {
    const double X0 = m.X0, eps = m.eps, S = X + X0;
    PosRegime reg = classify_pos(X, t, X0, cfg, eps);
    AsymptoticDensity out;
    out.eps = eps;
    out.regime = to_string(reg.label);
    out.boundary = reg.boundary;

    const double w = cfg.blend;
    double d = t + X - X0;
    Branch bm{"direct", -d * d / (4.0 * t), -std::log(2.0 * std::sqrt(pi * t))};
    Branch refl{"reflected", -X - (t - S) * (t - S) / (4.0 * t),
                std::log(eps * std::pow(t, 1.5) * (S + t) / (4.0 * std::sqrt(pi) * S * S * S))};

    if (reg.label == PosLabel::T_scale) {
        double T = t - std::log(1.0 / eps);
        Branch b{"T-scale", -(X + 0.5), -0.5 * std::log(2.0 * pi) + std::exp(-(T - S))};
        out.branches.push_back(b);
        out.mark_dominant();
        return out;
    }

    bool near1 = std::fabs(t - reg.t1) <= w;
    bool near2 = std::fabs(t - reg.t2) <= w;
    bool use_bm = reg.label != PosLabel::iii || near2;
    bool use_refl = reg.label == PosLabel::i || near1;
    bool use_ret = reg.label != PosLabel::i || near1;
    if (use_bm) out.branches.push_back(bm);
    if (use_refl) out.branches.push_back(refl);
    if (use_ret && t >= reg.t_plus) {
        ZStar z = solve_zstar(X, t, X0);
        out.branches.push_back({"returned", f_at_critical(z.z_star, X, X0), log_returned_prefactor(z.z_star, X, X0)});
    }
    out.mark_dominant();
    return out;
}

double density_T_scale_pos(double X, double T, const ModelParams& m) {
    check_pos(X, m.X0);
    return std::exp(-0.5 * std::log(2.0 * pi) - (X + 0.5) / m.eps + std::exp(-(T - X - m.X0)));
}

SumResidueAsym sum_residue_asym(double X, double t, const ModelParams& m) {
    check_pos(X, m.X0);
    const double S = X + m.X0, eps = m.eps;
    if (!(t > S)) throw DomainError("sum_residue_asym requires t > X + X0");
    SumResidueAsym r;
    double phi_ss = S * S / (4.0 * t * t) - 0.25;
    double Nt = std::floor(-phi_ss / eps);
    if (Nt < 1.0 || (Nt <= 2.0 && (t - S) / eps <= 8.0 * S)) {
        // t - X - X0 = O(eps): the last residue dominates.
        const double M = Nt;
        r.form = "near-boundary";
        r.log_endpoint = -M * std::log(eps) - 0.5 * std::log(2.0 * pi) - std::lgamma(M + 1.0) - (X + 0.5) / eps;
        return r;
    }
    double z = eps * Nt;
    double fp = fprime_pos(z, X, t, m.X0);
    r.form = "endpoint";
    // The geometric tail needs f increasing at the last pole.
    if (fp > 0.0)
        r.log_endpoint = 0.5 * std::log(eps) + std::log(g_pos(z)) - std::log(-std::expm1(-fp)) + f_pos(z, X, t, m.X0) / eps;
    if (t > curve_t_plus(X, m.X0)) {
        ZStar zs = solve_zstar(X, t, m.X0);
        if (zs.z_star < z) {
            r.form = fp > 0.0 ? "endpoint+saddle" : "saddle";
            r.log_saddle = log_returned_prefactor(zs.z_star, X, m.X0) + f_at_critical(zs.z_star, X, m.X0) / eps;
        }
    }
    return r;
}

double log_int_asym_pos(double X, double t, const ModelParams& m) {
    check_pos(X, m.X0);
    const double S = X + m.X0, eps = m.eps;
    double q = S / t;
    return std::log(eps / (4.0 * std::sqrt(pi * S)) * (q + 1.0) / std::pow(q * q, 5.0 / 4.0)) +
           (m.X0 - X) / (2.0 * eps) + ((q * q - 1.0) / 4.0 * t - 0.5 * S * q) / eps;
}

} // namespace hwasym
