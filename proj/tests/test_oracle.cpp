#include <doctest.h>

#include <cstdlib>

#include "hwasym/exact.hpp"
#include "hwasym/inversion.hpp"
#include "hwasym/oracle.hpp"

using namespace hwasym;

TEST_SUITE("oracle") {

TEST_CASE("simulation is reproducible across worker counts") {
    ModelParams m = ModelParams::from_x0(1.0, 1.0);
    McConfig a;
    a.paths = 20000;
    a.threads = 1;
    McConfig b = a;
    b.threads = 3;
    CHECK(simulate_paths(m, 0.7, a) == simulate_paths(m, 0.7, b));
    McConfig c = a;
    c.seed = a.seed + 1;
    CHECK(simulate_paths(m, 0.7, a) != simulate_paths(m, 0.7, c));
}

TEST_CASE("simulation matches inversion") {
    ModelParams m = ModelParams::from_x0(1.0, 1.0);
    McConfig cfg;
    cfg.paths = 400000;
    std::vector<double> xs{-0.5, 0.0, 0.5};
    EmpiricalDensity e = simulate(m, 0.5, xs, cfg);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double s = smooth_with_kernel([&](double x) { return invert_bromwich(x, 0.5, m).value; }, xs[i], e.bandwidth);
        CHECK(std::fabs(e.density[i] - s) < 3.0 * e.std_error[i]);
    }
}

TEST_CASE("simulation relaxes to the steady state") {
    ModelParams m = ModelParams::from_x0(1.0, 1.0);
    McConfig cfg;
    cfg.paths = 200000;
    std::vector<double> xs;
    for (double x = -3.0; x <= 3.0; x += 0.5) xs.push_back(x);
    EmpiricalDensity e = simulate(m, 12.0, xs, cfg);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double s = smooth_with_kernel([&](double x) { return steady_density(x, m); }, xs[i], e.bandwidth);
        CHECK(std::fabs(e.density[i] - s) < 3.0 * e.std_error[i] + 1e-12);
    }
}

TEST_CASE("short time is concentrated at the start") {
    ModelParams m = ModelParams::from_x0(1.0, 1.0);
    McConfig cfg;
    cfg.paths = 20000;
    cfg.dt = 1e-4;
    std::vector<double> s = simulate_paths(m, 1e-3, cfg);
    double mean = 0.0;
    for (double x : s) mean += x / s.size();
    CHECK(std::fabs(mean - (1.0 - 1e-3)) < 0.01);
    CHECK(silverman_bandwidth(s) < 0.05);
}

TEST_CASE("PDE conserves mass") {
    ModelParams m = ModelParams::from_x0(1.0, 1.0);
    for (double t : {1.0, 5.0}) {
        PdeSolution s = pde_solve(m, t, default_grid(m, t));
        double mass = 0.0;
        for (double p : s.p) mass += p * s.dx;
        CHECK(std::fabs(mass - 1.0) < 1e-8);
        CHECK(std::fabs(s.mass_drift) < 1e-8);
    }
}

TEST_CASE("PDE matches inversion") {
    ModelParams m = ModelParams::from_x0(2.0, 1.0);
    double lp = pde_log_density(m, 1.5, {-0.6}, default_grid(m, 1.5))[0];
    CHECK(std::fabs(std::exp(lp) / invert_bromwich(-0.6, 1.5, m).value - 1.0) < 1e-3);
}

TEST_CASE("worker count follows the environment") {
    setenv("HWASYM_THREADS", "2", 1);
    CHECK(worker_count() == 2);
    unsetenv("HWASYM_THREADS");
    CHECK(worker_count() >= 1);
}

}
