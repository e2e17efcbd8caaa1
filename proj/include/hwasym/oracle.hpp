#pragma once

#include <cstdint>
#include <functional>

#include "hwasym/common.hpp"

namespace hwasym {

// Worker count from HWASYM_THREADS (default: hardware concurrency).
int worker_count();

struct McConfig {
    long paths = 1000000;
    double dt = 0.002;
    std::uint64_t seed = 0x5eed2024ULL;
    double bandwidth = 0.0; // 0: Silverman rule on the sample
    int threads = 0;        // 0: worker_count()
};

struct EmpiricalDensity {
    std::vector<double> x;
    std::vector<double> density;
    std::vector<double> std_error;
    double bandwidth = 0.0;
    long paths = 0;
};

// Terminal positions of dx = b(x) dt + sqrt(2) dW, b = -beta (x > 0), -(x + beta) (x < 0), x(0) = x0.
std::vector<double> simulate_paths(const ModelParams& m, double t, const McConfig& cfg);
EmpiricalDensity kde(const std::vector<double>& samples, const std::vector<double>& xs, double bandwidth);
EmpiricalDensity simulate(const ModelParams& m, double t, const std::vector<double>& xs, const McConfig& cfg);
double silverman_bandwidth(const std::vector<double>& samples);

// Gaussian-kernel smoothing of a density, matching the KDE's expectation.
double smooth_with_kernel(const std::function<double(double)>& p, double x, double bandwidth);

enum class PdeScheme { explicit_euler, crank_nicolson, implicit_euler };

struct PdeGrid {
    double x_lo = 0.0;
    double x_hi = 0.0;
    int nx = 0;
    double dt = 0.0;
    PdeScheme scheme = PdeScheme::implicit_euler;
    double t_start = 0.0; // > 0: start from the free Brownian density at t_start
};

// Reflecting ends at -beta-8 and x0 + 6 sqrt(2t), dx = dx_scale/beta; dt <= 0 picks min(2e-3, 0.07/beta^2).
PdeGrid default_grid(const ModelParams& m, double t, double dx_scale = 0.04, double dt = 0.0);

struct PdeSolution {
    double x_lo = 0.0;
    double dx = 0.0;
    std::vector<double> p;
    double mass_drift = 0.0;

    double center(int i) const { return x_lo + (i + 0.5) * dx; }
    double log_at(double x) const;
    double at(double x) const { return std::exp(log_at(x)); }
};

PdeSolution pde_solve(const ModelParams& m, double t, const PdeGrid& grid);
// Implicit solves at three dt and two dx levels, Richardson-combined in log p.
std::vector<double> pde_log_density(const ModelParams& m, double t, const std::vector<double>& xs, const PdeGrid& grid);

} // namespace hwasym
