#include "hwasym/asym_neg.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <map>
#include <mutex>

namespace hwasym {

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 300) {
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

void check_strip(double X) {
    if (!(X > -1.0 && X < 0.0)) throw DomainError("X must lie in (-1, 0)");
}

void check_z(double z, double X) {
    if (!(z > 0.0 && z <= 0.25 * (1.0 + X) * (1.0 + X) * (1.0 + 1e-14)))
        throw DomainError("z must lie in (0, (1+X)^2/4]");
}

double sqrt_pos(double v) { return std::sqrt(std::max(v, 0.0)); }

} // namespace

double curve_t_star(double X, double X0) {
    check_strip(X);
    double U = std::sqrt(-X * X - 2.0 * X);
    return X0 / U + std::log((1.0 + U) / (1.0 + X));
}

double X_cusp(double X0) { return -1.0 + 2.0 / std::sqrt(X0 + 4.0); }

double t_cusp(double X0) {
    double r = std::sqrt(X0 * (X0 + 3.0));
    return r + std::log((X0 + 2.0 + r) / std::sqrt(X0 + 4.0));
}

double cusp_slope(double X0) { return std::sqrt((X0 + 3.0) * (X0 + 4.0) / X0); }

double t_d_at_zero(double X0) {
    double a = std::sqrt(X0 + 2.0), b = std::sqrt(X0);
    return std::sqrt(X0 * (X0 + 2.0)) + std::log((a + b) / (a - b));
}

Caustics curves_caustic(double X, double X0) {
    check_strip(X);
    double disc = (X * X + 2.0 * X) * (X0 + 4.0) + X0;
    if (disc < -1e-14) throw DomainError("curves_caustic: X outside (X_cusp, 0)");
    double root = std::sqrt(X0) * (X + 1.0) * sqrt_pos(disc);
    double base = -X * (X0 + 2.0) * (X + 2.0) + X0;
    const double y = X * (X + 2.0);
    Caustics c;
    c.alpha_c = std::sqrt((base + root) * X0 / (-2.0 * y));
    // base^2 - root^2 = 4 y (y - X0 (X0 + 2)) removes the cancellation of the minus branch as X -> 0.
    c.alpha_d = std::sqrt(2.0 * X0 * (X0 * (X0 + 2.0) - y) / (base + root));
    auto t_of = [&](double alpha) {
        double q = X0 / alpha;
        double s = sqrt_pos((X + 1.0) * (X + 1.0) + q * q - 1.0);
        return alpha + std::log((X + 1.0 + s) / (1.0 - q));
    };
    c.t_c = t_of(c.alpha_c);
    c.t_d = t_of(c.alpha_d);
    return c;
}

StarPoint star_point(double X0) {
    static std::mutex mu;
    static std::map<double, StarPoint> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(X0);
        if (it != cache.end()) return it->second;
    }
    const double xc = X_cusp(X0);
    auto h = [&](double X) { return curves_caustic(X, X0).t_d - curve_t_star(X, X0); };
    double lo = xc + 1e-12 * std::max(1.0, std::fabs(xc)), hi = -1e-12;
    if (!(h(lo) > 0 && h(hi) < 0)) throw NumericError("star_point: t* and t_d do not cross");
    StarPoint sp;
    sp.X_star = bisect(h, lo, hi);
    sp.t_starstar = curve_t_star(sp.X_star, X0);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(X0, sp);
    return sp;
}

NegCurves neg_curves(double X, double X0) {
    NegCurves c;
    c.X_cusp = X_cusp(X0);
    c.t_cusp = t_cusp(X0);
    StarPoint sp = star_point(X0);
    c.X_star = sp.X_star;
    c.t_starstar = sp.t_starstar;
    if (X > -1.0 && X < 0.0) c.t_star = curve_t_star(X, X0);
    if (X > c.X_cusp && X < 0.0) {
        Caustics k = curves_caustic(X, X0);
        c.t_c = k.t_c;
        c.t_d = k.t_d;
        c.alpha_c = k.alpha_c;
        c.alpha_d = k.alpha_d;
    }
    return c;
}

std::string to_string(NegLabel l) {
    switch (l) {
    case NegLabel::I: return "I";
    case NegLabel::II: return "II";
    case NegLabel::III: return "III";
    case NegLabel::IV: return "IV";
    case NegLabel::V: return "V";
    case NegLabel::VI: return "VI";
    case NegLabel::VII: return "VII";
    case NegLabel::t_star_layer: return "t*-layer";
    case NegLabel::cusp_layer: return "cusp-layer";
    case NegLabel::T_scale: return "T-scale";
    }
    return "?";
}

NegLabel region_of(double X, double t, double X0) {
    if (!(X < 0.0)) throw DomainError("region_of requires X < 0");
    if (!(t > 0.0)) throw DomainError("t must be positive");
    if (X <= -1.0) return NegLabel::I;
    const double ts = curve_t_star(X, X0);
    if (X <= X_cusp(X0)) return t < ts ? NegLabel::I : NegLabel::II;
    const Caustics k = curves_caustic(X, X0);
    const double xs = star_point(X0).X_star;
    if (t < std::min(ts, k.t_d)) return NegLabel::III;
    if (t >= k.t_c) return NegLabel::VI;
    if (X > xs) return t < ts ? NegLabel::IV : NegLabel::V;
    return t < k.t_d ? NegLabel::VII : NegLabel::V;
}

double phis_residual(double phi, double X, double t, double X0) {
    const double q = 1.0 + X;
    if (!(q * q + 4.0 * phi > 0.0)) throw DomainError("phi must exceed -(1+X)^2/4");
    const double a = std::sqrt(1.0 + 4.0 * phi), b = std::sqrt(q * q + 4.0 * phi);
    if (q >= 0.0) return t - X0 / a + std::log((b + q) / (a + 1.0));
    if (!(phi > 0.0)) throw DomainError("phi must be positive for X < -1");
    return t - X0 / a + std::log(4.0 * phi / (a + 1.0)) - std::log(b - q);
}

std::optional<double> solve_phis(double X, double t, double X0) {
    if (!(X < 0.0)) throw DomainError("solve_phis requires X < 0");
    if (!(t > 0.0)) throw DomainError("t must be positive");
    auto L = [&](double phi) { return phis_residual(phi, X, t, X0); };
    if (X <= -1.0) {
        auto h = [&](double u) { return L(std::exp(u)); };
        double hi = 0.0, lo = 0.0;
        while (h(hi) <= 0.0) hi += 2.0;
        while (h(lo) >= 0.0) {
            lo -= 2.0 + 0.5 * std::fabs(lo);
            if (lo < -740.0) throw NumericError("solve_phis: phi_s underflows");
        }
        return std::exp(bisect(h, lo, hi));
    }
    const double ts = curve_t_star(X, X0);
    if (t >= ts) return std::nullopt;
    const double lo = -0.25 * (1.0 + X) * (1.0 + X);
    // At the branch point the residual equals t - t*.
    auto Lb = [&](double phi) { return phi <= lo ? t - ts : L(phi); };
    double hi = 1.0;
    while (L(hi) <= 0.0) hi *= 4.0;
    return bisect(Lb, lo, hi);
}

double ftilde(double z, double X, double t, double X0) {
    check_strip(X);
    if (z == 0.0) return -0.5 * (1.0 + X) * (1.0 + X);
    check_z(z, X);
    const double q = 1.0 + X, U = std::sqrt(1.0 - 4.0 * z), V = sqrt_pos(q * q - 4.0 * z);
    return -X * X / 4.0 - X / 2.0 + X0 / 2.0 - z * t - (X0 / 2.0 + 0.25) * U - q * V / 4.0 +
           z * (std::log(q + V) + std::log1p(U) - std::log(4.0 * z));
}

double ftilde_prime(double z, double X, double t, double X0) {
    check_strip(X);
    check_z(z, X);
    const double q = 1.0 + X, U = std::sqrt(1.0 - 4.0 * z), V = sqrt_pos(q * q - 4.0 * z);
    return -t + X0 / U + std::log(q + V) + std::log1p(U) - std::log(4.0 * z);
}

double ftilde_second(double z, double X, double X0) {
    check_strip(X);
    check_z(z, X);
    const double q = 1.0 + X, U = std::sqrt(1.0 - 4.0 * z), V = std::sqrt(q * q - 4.0 * z);
    return 2.0 * X0 / (U * U * U) - 1.0 / (2.0 * z * U) - q / (2.0 * z * V);
}

ZInflection z_inflections(double X, double X0) {
    check_strip(X);
    const double q = 1.0 + X;
    const double disc = (X0 + 4.0) * q * q - 4.0;
    ZInflection r;
    if (disc < 0.0) return r;
    r.real = true;
    const double base = (X0 + 1.0) * (X0 + 1.0) * q * q + 2.0 * (X0 + 1.0) - 3.0 * q * q;
    const double spread = std::pow(X0, 1.5) * q * std::sqrt(disc);
    const double den = 8.0 * (X0 + X + 2.0) * (X0 - X);
    r.z_minus = (base - spread) / den;
    r.z_plus = (base + spread) / den;
    return r;
}

double z_at_cusp(double X0) { return 3.0 / (4.0 * (X0 + 3.0)); }

std::vector<double> solve_zroots(double X, double t, double X0, double z_hi) {
    check_strip(X);
    const double zmax = 0.25 * (1.0 + X) * (1.0 + X);
    z_hi = std::min(z_hi, zmax);
    std::vector<double> roots;
    if (!(z_hi > 0.0)) return roots;
    auto fp = [&](double z) { return ftilde_prime(z, X, t, X0); };
    // ftilde' falls on (0, z-), rises on (z-, z+), falls on (z+, zmax).
    std::vector<double> knots{0.0};
    ZInflection zi = z_inflections(X, X0);
    if (zi.real) {
        for (double z : {zi.z_minus, zi.z_plus})
            if (z > 0.0 && z < z_hi) knots.push_back(z);
    }
    knots.push_back(z_hi);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double l = knots[k], r = knots[k + 1];
        const double fr = fp(r);
        if (l == 0.0) {
            if (fr >= 0.0) continue;
            auto h = [&](double u) { return fp(std::exp(u)); };
            double ur = std::log(r), ul = ur - 1.0;
            while (h(ul) <= 0.0) {
                ul -= 1.0 + 0.5 * std::fabs(ul);
                if (ul < -740.0) throw NumericError("solve_zroots: z_1 underflows");
            }
            roots.push_back(std::exp(bisect(h, ul, ur)));
        } else {
            const double fl = fp(l);
            if ((fl > 0.0) != (fr > 0.0) && fr != 0.0) roots.push_back(bisect(fp, l, r));
        }
    }
    return roots;
}

SaddleRoots solve_saddles(double X, double t, double X0) {
    SaddleRoots r;
    r.phi_s = solve_phis(X, t, X0);
    if (X <= -1.0) return r;
    double z_hi = 0.25 * (1.0 + X) * (1.0 + X);
    if (r.phi_s) z_hi = -*r.phi_s;
    if (z_hi > 0.0) r.z_roots = solve_zroots(X, t, X0, z_hi);
    return r;
}

SaddleTerm F_and_G(double X, double t, double phi, double X0) {
    (void)t;
    const double q = 1.0 + X;
    if (!(q * q + 4.0 * phi > 0.0)) throw DomainError("F_and_G: (1+X)^2 + 4 phi_s <= 0");
    const double a = std::sqrt(1.0 + 4.0 * phi), b = std::sqrt(q * q + 4.0 * phi);
    SaddleTerm s;
    s.F = -X * X / 4.0 - X / 2.0 + X0 / 2.0 + X0 * phi / a - (X0 / 2.0 + 0.25) * a + q * b / 4.0;
    double bq, m;
    if (q >= 0.0) {
        bq = b + q;
        m = 2.0 * (1.0 - q * q) / (a * b * (b + q * a));
    } else {
        bq = 4.0 * phi / (b - q);
        m = (1.0 / a - q / b) / (2.0 * phi);
    }
    const double K = 2.0 * X0 / (a * a * a) + m;
    s.logG = -0.5 * std::log(2.0 * pi) - 0.5 * std::log(a) - 0.5 * std::log(b) + 0.5 * std::log(a + 1.0) -
             0.5 * std::log(bq) - 0.5 * std::log(std::fabs(K));
    return s;
}

SaddleTerm ftilde_and_Gtilde(double X, double t, double z, double X0) {
    check_strip(X);
    check_z(z, X);
    const double q = 1.0 + X, U = std::sqrt(1.0 - 4.0 * z), V = std::sqrt(q * q - 4.0 * z);
    SaddleTerm s;
    s.F = ftilde(z, X, t, X0);
    const double K = -2.0 * X0 / (U * U * U) + (1.0 / U + q / V) / (2.0 * z);
    s.logG = -0.5 * std::log(2.0 * pi) - 0.5 * std::log(U) - 0.5 * std::log(V) + 0.5 * std::log1p(U) -
             0.5 * (std::log(4.0 * z) - std::log(q + V)) - 0.5 * std::log(std::fabs(K));
    return s;
}

std::pair<double, double> cusp_coordinates(double X, double t, const ModelParams& m) {
    const double se = std::sqrt(m.eps);
    double xi = (X - X_cusp(m.X0)) / se;
    double eta = (t - t_cusp(m.X0) - cusp_slope(m.X0) * se * xi) / std::pow(m.eps, 0.75);
    return {xi, eta};
}

NegRegime classify_region(double X, double t, double X0, const NegConfig& cfg, double eps) {
    NegRegime r;
    r.region = region_of(X, t, X0);
    r.label = r.region;
    if (!(eps > 0.0)) return r;
    if (X > -1.0) {
        ModelParams m = ModelParams::from_X0(1.0 / std::sqrt(eps), X0);
        auto [xi, eta] = cusp_coordinates(X, t, m);
        if (std::fabs(xi) <= cfg.cusp_xi && std::fabs(eta) <= cfg.cusp_eta) {
            r.label = NegLabel::cusp_layer;
            return r;
        }
        if (X < star_point(X0).X_star && std::fabs(t - curve_t_star(X, X0)) <= cfg.star_window * std::cbrt(eps)) {
            r.label = NegLabel::t_star_layer;
            return r;
        }
    }
    if (r.region == NegLabel::I && X <= -1.0) {
        if (*solve_phis(X, t, X0) < cfg.t_scale_ratio * eps) r.label = NegLabel::T_scale;
    } else if (r.region == NegLabel::II || r.region == NegLabel::VI) {
        SaddleRoots s = solve_saddles(X, t, X0);
        if (!s.z_roots.empty() && s.z_roots.front() < cfg.t_scale_ratio * eps) r.label = NegLabel::T_scale;
    }
    return r;
}

double log_density_t_star_layer(double X, double t, const ModelParams& m) {
    check_strip(X);
    const double q = 1.0 + X, eps = m.eps, X0 = m.X0;
    const double U = std::sqrt(1.0 - q * q);
    const double Fc = -X * X / 4.0 - X / 2.0 + X0 / 2.0 - X0 / (4.0 * U) - (X0 / 4.0 + 0.25) * U;
    const double lam = (t - curve_t_star(X, X0)) / std::cbrt(eps);
    return -std::log(2.0 * std::sqrt(pi)) + 0.5 * std::log1p(U) - 0.5 * std::log(U) + Fc / eps -
           q * q * lam / (4.0 * std::pow(eps, 2.0 / 3.0)) - q * q * lam * lam * lam / 12.0;
}

double log_density_T_scale_neg(double X, double T, const ModelParams& m) {
    const double q = 1.0 + X;
    return -0.5 * std::log(2.0 * pi) - q * q / (2.0 * m.eps) + std::exp(m.X0 - T) * q;
}

double log_density_gaussian_layer(double Delta, double t, const ModelParams& m) {
    const double e2 = std::exp(2.0 * (t - m.X0));
    return -0.5 * std::log(2.0 * pi) + (t - m.X0) - 0.5 * std::log(2.0 * m.X0 + e2 - 1.0) -
           e2 / (e2 - 1.0 + 2.0 * m.X0) * Delta * Delta / 2.0;
}

namespace {

double log_cusp_J(double xi, double eta, double X0) {
    const double A = std::pow((X0 + 4.0) * (X0 + 3.0) / X0, 1.5);
    const double c = 2.0 * std::pow(X0 + 3.0, 5.5) / (3.0 * std::pow(X0, 2.5));
    // w = c^{-1/4} s turns the quartic coefficient into 1.
    const double c4 = std::pow(c, 0.25);
    const double b1 = -eta / c4, b2 = A * xi / (c4 * c4);
    auto q = [&](double s) { return b1 * s + b2 * s * s - s * s * s * s; };
    double qmax = -inf;
    for (int i = -4000; i <= 4000; ++i) qmax = std::max(qmax, q(i * 0.005));
    double L = 1.0;
    while (q(L) > qmax - 60.0 || q(-L) > qmax - 60.0) L *= 1.25;
    double total = 0.0, err_total = 0.0;
    const int pieces = 16;
    for (int k = 0; k < pieces; ++k) {
        double lo = -L + 2.0 * L * k / pieces, hi = lo + 2.0 * L / pieces;
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double s) { return std::exp(q(s) - qmax); }, lo, hi, 15, 1e-14, &err);
        err_total += err;
    }
    if (!(err_total <= 1e-10 * total))
        throw NumericError("cusp_J: quadrature reached only relative error " + std::to_string(err_total / total));
    return std::log(total) + qmax - std::log(c4);
}

} // namespace

double cusp_J(double xi, double eta, double X0) { return std::exp(log_cusp_J(xi, eta, X0)); }

namespace {

Branch cusp_branch(double xi, double eta, const ModelParams& m) {
    const double X0 = m.X0, eps = m.eps, r0 = std::sqrt(X0), r3 = std::sqrt(X0 + 3.0);
    const double Fcusp = r0 / (4.0 * (X0 + 4.0)) * (-2.0 * std::pow(X0 + 3.0, 1.5) + r0 * (2.0 * X0 + 9.0));
    const double k1 = (r0 + 2.0 * r3) * (r0 + 2.0 * r3) / (4.0 * std::sqrt(X0 * (X0 + 3.0) * (X0 + 4.0)));
    const double k2 = 3.0 / (4.0 * (X0 + 3.0));
    Branch b;
    b.name = "cusp";
    b.F = Fcusp - std::sqrt(eps) * xi * k1 - std::pow(eps, 0.75) * eta * k2;
    b.logG = -0.25 * std::log(eps) - std::log(2.0 * pi) + 0.5 * std::log((X0 + 3.0) / X0) +
             0.5 * std::log(r0 * r3 + X0 + 2.0) - xi * xi * (r0 + 2.0 * r3) / (4.0 * r0) + log_cusp_J(xi, eta, X0);
    return b;
}

Branch saddle_branch(const std::string& name, const SaddleTerm& s) { return {name, s.F, s.logG}; }

} // namespace

double log_cusp_density(double xi, double eta, const ModelParams& m) { return cusp_branch(xi, eta, m).log_value(m.eps); }

AsymptoticDensity density_asym_neg(double X, double t, const ModelParams& m, const NegConfig& cfg) {
    const double X0 = m.X0, eps = m.eps;
    NegRegime reg = classify_region(X, t, X0, cfg, eps);
    AsymptoticDensity out;
    out.eps = eps;
    out.regime = to_string(reg.label);
    out.boundary = reg.label != reg.region;

    switch (reg.label) {
    case NegLabel::cusp_layer: {
        auto [xi, eta] = cusp_coordinates(X, t, m);
        out.branches.push_back(cusp_branch(xi, eta, m));
        break;
    }
    case NegLabel::t_star_layer: {
        const double q = 1.0 + X, U = std::sqrt(1.0 - q * q), dt = t - curve_t_star(X, X0);
        const double Fc = -X * X / 4.0 - X / 2.0 + X0 / 2.0 - X0 / (4.0 * U) - (X0 / 4.0 + 0.25) * U;
        Branch b{"t*-layer", Fc - q * q * dt / 4.0, 0.0};
        b.logG = log_density_t_star_layer(X, t, m) - b.F / eps;
        out.branches.push_back(b);
        break;
    }
    case NegLabel::T_scale: {
        const double q = 1.0 + X, T = t - std::log(1.0 / eps);
        out.branches.push_back({"T-scale", -0.5 * q * q, -0.5 * std::log(2.0 * pi) + std::exp(X0 - T) * q});
        break;
    }
    default: {
        SaddleRoots s = solve_saddles(X, t, X0);
        const auto& z = s.z_roots;
        auto need = [&](std::size_t n) {
            if (z.size() != n)
                throw NumericError("density_asym_neg: found " + std::to_string(z.size()) + " roots in Region " +
                                   to_string(reg.region) + ", expected " + std::to_string(n));
        };
        switch (reg.region) {
        case NegLabel::I:
        case NegLabel::III:
            out.branches.push_back(saddle_branch("phi_s", F_and_G(X, t, *s.phi_s, X0)));
            break;
        case NegLabel::II:
        case NegLabel::VI:
            need(1);
            out.branches.push_back(saddle_branch("z1", ftilde_and_Gtilde(X, t, z[0], X0)));
            break;
        case NegLabel::VII:
            need(1);
            out.branches.push_back(saddle_branch("z3", ftilde_and_Gtilde(X, t, z[0], X0)));
            break;
        case NegLabel::V:
            need(3);
            out.branches.push_back(saddle_branch("z1", ftilde_and_Gtilde(X, t, z[0], X0)));
            out.branches.push_back(saddle_branch("z3", ftilde_and_Gtilde(X, t, z[2], X0)));
            break;
        case NegLabel::IV:
            need(2);
            out.branches.push_back(saddle_branch("phi_s", F_and_G(X, t, *s.phi_s, X0)));
            out.branches.push_back(saddle_branch("z1", ftilde_and_Gtilde(X, t, z[0], X0)));
            break;
        default: break;
        }
    }
    }
    out.mark_dominant();
    return out;
}

double curve_t_gamma(double X, double X0) {
    if (!(X > X_cusp(X0) && X < 0.0)) throw DomainError("curve_t_gamma requires X in (X_cusp, 0)");
    const Caustics k = curves_caustic(X, X0);
    const double ts = curve_t_star(X, X0);
    // z_1 term minus the competing term: F below t*, ftilde(z_3) above.
    auto delta = [&](double t) {
        SaddleRoots s = solve_saddles(X, t, X0);
        if (s.z_roots.empty()) throw NumericError("curve_t_gamma: z_1 missing");
        double f1 = ftilde(s.z_roots.front(), X, t, X0);
        if (t < ts && s.phi_s) return f1 - F_and_G(X, t, *s.phi_s, X0).F;
        if (s.z_roots.size() < 3) throw NumericError("curve_t_gamma: z_3 missing");
        return f1 - ftilde(s.z_roots.back(), X, t, X0);
    };
    // t_c grows without bound as X -> 0.
    const double top = std::min(k.t_c, k.t_d + 40.0);
    const double w = top - k.t_d;
    double lo = k.t_d + 1e-6 * w, hi = top - 1e-6 * w;
    if (!(delta(lo) < 0.0 && delta(hi) > 0.0)) throw NumericError("curve_t_gamma: no sign change between t_d and t_c");
    return bisect(delta, lo, hi);
}

int count_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n, bool log_spacing) {
    int count = 0;
    double prev = 0.0;
    bool have = false;
    for (int i = 0; i < n; ++i) {
        double u = double(i) / (n - 1);
        double x = log_spacing ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo))) : lo + u * (hi - lo);
        double v = f(x);
        if (v == 0.0 || std::isnan(v)) continue;
        if (have && (v > 0) != (prev > 0)) ++count;
        prev = v;
        have = true;
    }
    return count;
}

} // namespace hwasym
