#include "commands.hpp"

#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"
#include "hwasym/rays.hpp"

namespace hwasym::cli {

namespace {

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

Table neg_curve_table(double X0, int n) {
    Table t;
    t.schema = "hwasym.figure.curves/1";
    t.params = {{"X0", X0}};
    t.columns = {"X", "t_fluid", "t_star", "t_c", "t_d"};
    for (double X : grid(-0.995, -0.005, n)) {
        NegCurves c = neg_curves(X, X0);
        t.add({X, X0 - std::log1p(X), c.t_star, c.t_c, c.t_d});
    }
    return t;
}

Table ray_table(double X0, const std::vector<double>& alphas, double t_max, int points, bool negative, bool returned) {
    Table t;
    t.schema = "hwasym.figure.rays/1";
    t.params = {{"X0", X0}, {"t_max", t_max}};
    t.columns = {"ray", "alpha", "X", "t", "segment"};
    long id = 0;
    for (double a : alphas) {
        double tr = ray_return_time(a, X0);
        for (const RayPoint& p : ray_polyline(a, X0, t_max, points)) {
            bool neg = p.t <= tr;
            if ((neg && negative) || (!neg && returned)) t.add({id, a, p.X, p.t, std::string(neg ? "negative" : "returned")});
        }
        ++id;
    }
    return t;
}

Table t_plus_table(double X0, double X_max, int n) {
    Table t;
    t.schema = "hwasym.figure.curves/1";
    t.params = {{"X0", X0}};
    t.columns = {"X", "t_plus"};
    for (double X : grid(0.0, X_max, n)) t.add({X, curve_t_plus(X, X0)});
    return t;
}

} // namespace

std::vector<std::pair<std::string, Table>> figure_data(int n) {
    std::vector<std::pair<std::string, Table>> out;
    switch (n) {
    case 1: {
        Table t;
        t.schema = "hwasym.figure1/1";
        t.columns = {"X0", "X", "t_plus", "t1", "t2"};
        for (double X0 : {0.2, 1.0, 5.0})
            for (double X : grid(0.0, 3.0, 61)) t.add({X0, X, curve_t_plus(X, X0), curve_t1(X, X0), curve_t2(X, X0)});
        out.push_back({"figure1.csv", t});
        break;
    }
    case 2: {
        out.push_back({"figure2.csv", neg_curve_table(1.0, 199)});
        Table p;
        p.schema = "hwasym.figure.points/1";
        p.columns = {"name", "X", "t"};
        StarPoint sp = star_point(1.0);
        p.add({std::string("cusp"), X_cusp(1.0), t_cusp(1.0)});
        p.add({std::string("star"), sp.X_star, sp.t_starstar});
        out.push_back({"figure2_points.csv", p});
        break;
    }
    case 3: {
        Table t;
        t.schema = "hwasym.figure3/1";
        t.params = {{"X0", 1.0}};
        t.columns = {"X", "t", "region"};
        for (double X : grid(-1.5, -0.005, 120))
            for (double tt : grid(0.05, 6.0, 120)) t.add({X, tt, to_string(region_of(X, tt, 1.0))});
        out.push_back({"figure3.csv", t});
        out.push_back({"figure3_curves.csv", neg_curve_table(1.0, 199)});
        break;
    }
    case 4: {
        Table t;
        t.schema = "hwasym.figure4/1";
        t.columns = {"X0", "X", "t_c", "t_d", "t_gamma"};
        for (double X0 : {1.0, 2.0, 5.0}) {
            double Xc = X_cusp(X0);
            for (double X : grid(Xc + 1e-3 * -Xc, -0.005, 80)) {
                Caustics c = curves_caustic(X, X0);
                t.add({X0, X, c.t_c, c.t_d, curve_t_gamma(X, X0)});
            }
        }
        out.push_back({"figure4.csv", t});
        break;
    }
    case 5: {
        Table t;
        t.schema = "hwasym.figure5/1";
        t.params = {{"X0", 1.0}};
        t.columns = {"X", "t", "phi_s"};
        for (double X : grid(-1.5, -0.01, 60))
            for (double tt : grid(0.1, 4.0, 60)) {
                auto phi = solve_phis(X, tt, 1.0);
                t.add({X, tt, phi ? *phi : nan});
            }
        out.push_back({"figure5.csv", t});
        break;
    }
    case 6: {
        out.push_back({"figure6_rays.csv", ray_table(1.0, grid(0.1, 4.0, 40), 8.0, 200, true, false)});
        out.push_back({"figure6_curves.csv", neg_curve_table(1.0, 199)});
        break;
    }
    case 7: {
        // Tangency with t_plus at X = 2 X0^2/(alpha^2 - X0^2) - X0, inside [0, 3] for these alphas.
        out.push_back({"figure7_rays.csv", ray_table(0.1, grid(0.13, 0.45, 30), 6.0, 800, false, true)});
        out.push_back({"figure7_curves.csv", t_plus_table(0.1, 3.0, 301)});
        break;
    }
    case 8: {
        out.push_back({"figure8_rays.csv", ray_table(1.0, grid(0.1, 4.0, 40), 8.0, 300, true, true)});
        out.push_back({"figure8_curves.csv", neg_curve_table(1.0, 199)});
        out.push_back({"figure8_tplus.csv", t_plus_table(1.0, 3.0, 61)});
        break;
    }
    default: throw UsageError("figure number must be 1..8");
    }
    return out;
}

} // namespace hwasym::cli
