#include "commands.hpp"

#include <sstream>

#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"
#include "hwasym/inversion.hpp"
#include "hwasym/oracle.hpp"
#include "hwasym/rays.hpp"
#include "hwasym/spectrum.hpp"

namespace hwasym::cli {

namespace {

double to_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::string branch_list(const AsymptoticDensity& a) {
    std::string s;
    for (const auto& b : a.branches) {
        if (!s.empty()) s += ';';
        s += b.name;
        if (b.dominant) s += '*';
    }
    return s;
}

std::vector<std::string> density_columns() {
    return {"x", "X", "t", "value", "scaled_log", "regime", "branches", "method", "error"};
}

} // namespace

std::vector<double> parse_values(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("range must be start:stop:count, got '" + spec + "'");
        double a = to_double(parts[0]), b = to_double(parts[1]);
        double c = to_double(parts[2]);
        if (!(c >= 1) || c != std::floor(c)) throw UsageError("range count must be a positive integer");
        int n = static_cast<int>(c);
        for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
        return out;
    }
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
    if (out.empty()) throw UsageError("empty value list");
    return out;
}

Table cmd_density(const DensityArgs& a) {
    if (!(a.beta > 0)) throw UsageError("--beta must be positive");
    if (!(a.X0 > 0)) throw UsageError("the scaled start X0 must be positive");
    if (a.X.empty() || a.t.empty()) throw UsageError("need at least one x and one t");
    for (double t : a.t)
        if (!(t > 0)) throw UsageError("times must be positive");
    const ModelParams m = ModelParams::from_X0(a.beta, a.X0);
    Table tab;
    tab.schema = "hwasym.density/1";
    tab.params = {{"beta", a.beta}, {"eps", m.eps}, {"x0", m.x0}, {"X0", m.X0}, {"method", a.method}};
    if (a.method == "mc") {
        tab.params.push_back({"seed", static_cast<long>(a.seed)});
        tab.params.push_back({"paths", a.paths});
    }
    tab.columns = density_columns();

    if (a.method == "inversion" && a.beta >= 8.0)
        throw UsageError("inversion is limited to beta < 8: the Bromwich integrand cancels below double precision. "
                         "Use --method asymptotic, rays or pde.");

    std::vector<double> xs;
    for (double X : a.X) xs.push_back(X * a.beta);
    for (double t : a.t) {
        if (a.method == "pde") {
            std::vector<double> lp = pde_log_density(m, t, xs, default_grid(m, t));
            for (std::size_t i = 0; i < xs.size(); ++i)
                tab.add({xs[i], a.X[i], t, std::exp(lp[i]), m.eps * lp[i], std::string("-"), std::string("-"),
                         a.method, nan});
            continue;
        }
        if (a.method == "mc") {
            McConfig cfg;
            cfg.seed = a.seed;
            cfg.paths = a.paths;
            EmpiricalDensity e = simulate(m, t, xs, cfg);
            for (std::size_t i = 0; i < xs.size(); ++i)
                tab.add({xs[i], a.X[i], t, e.density[i], m.eps * std::log(e.density[i]), std::string("-"),
                         std::string("-"), a.method, e.std_error[i]});
            continue;
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double X = a.X[i];
            if (a.method == "inversion") {
                InversionResult r = invert_bromwich(xs[i], t, m);
                tab.add({xs[i], X, t, r.value, m.eps * std::log(r.value), std::string("-"), std::string("-"),
                         a.method, r.error});
            } else if (a.method == "asymptotic" || a.method == "rays") {
                AsymptoticDensity d = a.method == "rays"  ? ray_density(X, t, m)
                                      : X >= 0.0          ? density_asym_pos(X, t, m)
                                                          : density_asym_neg(X, t, m);
                tab.add({xs[i], X, t, d.value(), d.scaled_log(), d.regime, branch_list(d), a.method, nan});
            } else {
                throw UsageError("unknown method '" + a.method + "'");
            }
        }
    }
    return tab;
}

Table cmd_curves(const std::string& side, double X0, const std::vector<double>& X) {
    if (!(X0 > 0)) throw UsageError("the scaled start X0 must be positive");
    Table tab;
    tab.params = {{"X0", X0}, {"side", side}};
    if (side == "pos") {
        tab.schema = "hwasym.curves.pos/1";
        tab.columns = {"X", "t_plus", "t1", "t2"};
        for (double x : X) {
            if (!(x >= 0)) throw UsageError("--side pos needs X >= 0");
            tab.add({x, curve_t_plus(x, X0), curve_t1(x, X0), curve_t2(x, X0)});
        }
        return tab;
    }
    if (side != "neg") throw UsageError("--side must be pos or neg");
    tab.schema = "hwasym.curves.neg/1";
    StarPoint sp = star_point(X0);
    tab.params.push_back({"X_cusp", X_cusp(X0)});
    tab.params.push_back({"t_cusp", t_cusp(X0)});
    tab.params.push_back({"X_star", sp.X_star});
    tab.params.push_back({"t_starstar", sp.t_starstar});
    tab.columns = {"X", "t_fluid", "t_star", "t_c", "t_d", "t_gamma"};
    for (double x : X) {
        if (!(x > -1.0 && x < 0.0)) throw UsageError("--side neg needs X in (-1, 0)");
        NegCurves c = neg_curves(x, X0);
        double tg = x > X_cusp(X0) ? curve_t_gamma(x, X0) : nan;
        tab.add({x, X0 - std::log1p(x), c.t_star, c.t_c, c.t_d, tg});
    }
    return tab;
}

Table cmd_spectrum(double beta, double x0, int n) {
    if (!(beta > 0)) throw UsageError("--beta must be positive");
    if (n < 1) throw UsageError("--n must be at least 1");
    const ModelParams m = ModelParams::from_x0(beta, x0);
    Table tab;
    tab.schema = "hwasym.spectrum/1";
    tab.params = {{"beta", beta}, {"x0", x0}, {"relaxation_rate", relaxation_rate(beta)}, {"beta_star", beta_star()}};
    tab.columns = {"N", "theta", "offset", "offset_asymptotic", "residue"};
    for (const Pole& p : find_poles(m, n))
        tab.add({static_cast<long>(p.N), p.theta, p.theta + p.N, p.N > 0 ? p.asym_offset : nan, p.residue});
    return tab;
}

Table cmd_rays(double X0, const std::vector<double>& alphas, double t_max, int points) {
    if (!(X0 > 0)) throw UsageError("the scaled start X0 must be positive");
    if (points < 2) throw UsageError("--points must be at least 2");
    Table tab;
    tab.schema = "hwasym.rays/1";
    tab.params = {{"X0", X0}, {"t_max", t_max}};
    tab.columns = {"ray", "alpha", "X", "t", "segment"};
    long id = 0;
    for (double a : alphas) {
        if (!(a > 0)) throw UsageError("alpha must be positive");
        double tr = ray_return_time(a, X0);
        for (const RayPoint& p : ray_polyline(a, X0, t_max, points))
            tab.add({id, a, p.X, p.t, std::string(p.t <= tr ? "negative" : "returned")});
        ++id;
    }
    return tab;
}

} // namespace hwasym::cli
