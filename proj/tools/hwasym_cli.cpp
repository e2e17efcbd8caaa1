#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "hwasym/common.hpp"
#include "validate.hpp"

using namespace hwasym;
using namespace hwasym::cli;

namespace {

std::string require_format(const std::string& f) {
    if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
    return f;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density asymptotics for the Halfin-Whitt diffusion"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "csv";
    app.add_option("--format", format, "Output format: csv or json")->capture_default_str();

    auto* density = app.add_subcommand("density", "Density p(x,t) at a grid of points");
    double beta = 0.0;
    std::string x0_spec, X0_spec, x_spec, X_spec, t_spec, method = "asymptotic";
    std::uint64_t seed = DensityArgs{}.seed;
    long paths = DensityArgs{}.paths;
    density->add_option("--beta", beta, "Abandonment parameter beta")->required();
    auto* o_x0 = density->add_option("--x0", x0_spec, "Start x0 (unscaled)");
    auto* o_X0 = density->add_option("--x0-scaled", X0_spec, "Start X0 = x0/beta");
    o_x0->excludes(o_X0);
    auto* o_x = density->add_option("--x", x_spec, "Points x (list or start:stop:count)");
    auto* o_X = density->add_option("--x-scaled", X_spec, "Points X = x/beta");
    o_x->excludes(o_X);
    density->add_option("--t", t_spec, "Times (list or start:stop:count)")->required();
    density->add_option("--method", method, "asymptotic, inversion, mc, pde or rays")->capture_default_str();
    density->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    density->add_option("--paths", paths, "Monte Carlo paths")->capture_default_str();

    auto* curves = app.add_subcommand("curves", "Transition curves on one side of X = 0");
    std::string side = "pos", curve_X = "0:3:31";
    double curve_X0 = 1.0;
    curves->add_option("--side", side, "pos or neg")->capture_default_str();
    curves->add_option("--x0-scaled", curve_X0, "Start X0")->capture_default_str();
    curves->add_option("--x-scaled", curve_X, "Points X")->capture_default_str();

    auto* figure = app.add_subcommand("figure", "Write the CSV datasets behind one figure");
    int fig = 0;
    std::string out_dir = ".";
    figure->add_option("n", fig, "Figure number 1..8")->required();
    figure->add_option("--out-dir", out_dir, "Directory for the CSV files")->capture_default_str();

    auto* spectrum = app.add_subcommand("spectrum", "Poles theta_N and residues");
    double sp_beta = 0.0, sp_x0 = 1.0;
    int sp_n = 5;
    spectrum->add_option("--beta", sp_beta, "Abandonment parameter beta")->required();
    spectrum->add_option("--x0", sp_x0, "Start x0 (unscaled)")->capture_default_str();
    spectrum->add_option("--n", sp_n, "Number of poles")->capture_default_str();

    auto* rays = app.add_subcommand("rays", "Ray polylines in the (X, t) plane");
    double ray_X0 = 1.0, t_max = 8.0;
    std::string alpha_spec = "0.1:4:40";
    int points = 200;
    rays->add_option("--x0-scaled", ray_X0, "Start X0")->capture_default_str();
    rays->add_option("--alpha", alpha_spec, "Departure times alpha")->capture_default_str();
    rays->add_option("--t-max", t_max, "Final time")->capture_default_str();
    rays->add_option("--points", points, "Points per ray")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Run the acceptance suite and print a JSON report");
    bool quick = false;
    std::vector<int> only;
    validate->add_flag("--quick", quick, "Fewer paths and smaller beta for the slow checks");
    validate->add_option("--only", only, "Run only these criterion ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        require_format(format);
        if (*density) {
            DensityArgs a;
            a.beta = beta;
            if (!(beta > 0)) throw UsageError("--beta must be positive");
            if (*o_x0 == *o_X0) throw UsageError("give exactly one of --x0 and --x0-scaled");
            a.X0 = *o_X0 ? parse_values(X0_spec).at(0) : parse_values(x0_spec).at(0) / beta;
            if (*o_x == *o_X) throw UsageError("give exactly one of --x and --x-scaled");
            a.X = *o_X ? parse_values(X_spec) : parse_values(x_spec);
            if (*o_x)
                for (double& v : a.X) v /= beta;
            a.t = parse_values(t_spec);
            a.method = method;
            a.seed = seed;
            a.paths = paths;
            if (paths < 1) throw UsageError("--paths must be positive");
            cmd_density(a).write(std::cout, format);
        } else if (*curves) {
            cmd_curves(side, curve_X0, parse_values(curve_X)).write(std::cout, format);
        } else if (*figure) {
            std::vector<std::pair<std::string, Table>> data = figure_data(fig);
            std::filesystem::create_directories(out_dir);
            for (const auto& [name, table] : data) {
                std::filesystem::path p = std::filesystem::path(out_dir) / name;
                std::ofstream os(p, std::ios::binary);
                if (!os) throw std::runtime_error("cannot write " + p.string());
                table.write_csv(os);
                std::cout << p.string() << '\n';
            }
        } else if (*spectrum) {
            cmd_spectrum(sp_beta, sp_x0, sp_n).write(std::cout, format);
        } else if (*rays) {
            cmd_rays(ray_X0, parse_values(alpha_spec), t_max, points).write(std::cout, format);
        } else if (*validate) {
            std::vector<CheckResult> r = run_acceptance(quick, only);
            std::cout << report_json(r, quick);
            for (const CheckResult& c : r)
                if (!c.pass) return 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
