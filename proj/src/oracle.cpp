#include "hwasym/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include "hwasym/exact.hpp"

namespace hwasym {

namespace {

constexpr long block_paths = 1024;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void simulate_block(const ModelParams& m, double t, const McConfig& cfg, long block, double* out, long count) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(std::uint64_t(block))));
    std::normal_distribution<double> normal(0.0, 1.0);
    const long steps = std::max(1L, long(std::ceil(t / cfg.dt - 1e-12)));
    const double h = t / steps;
    const double bm_sd = std::sqrt(2.0 * h);
    const double decay = std::exp(-h);
    const double ou_sd = std::sqrt(-std::expm1(-2.0 * h));
    for (long p = 0; p < count; ++p) {
        double x = m.x0;
        for (long k = 0; k < steps; ++k) {
            double z = normal(rng);
            if (x > 0.0)
                x += -m.beta * h + bm_sd * z;
            else
                x = (x + m.beta) * decay + ou_sd * z - m.beta;
        }
        out[p] = x;
    }
}

double bernoulli_fn(double v) {
    if (std::fabs(v) < 1e-8) return 1.0 - 0.5 * v;
    return v / std::expm1(v);
}

// U with drift b = -U': beta x (x > 0), beta x + x^2/2 (x < 0).
double potential(double x, double beta) { return beta * x + (x < 0.0 ? 0.5 * x * x : 0.0); }

// LU factors of a constant tridiagonal matrix, reused across time steps.
struct Tridiag {
    std::vector<double> lower, pivot, upper;

    Tridiag(std::vector<double> lo, std::vector<double> diag, std::vector<double> up)
        : lower(std::move(lo)), pivot(std::move(diag)), upper(std::move(up)) {
        for (std::size_t i = 1; i < pivot.size(); ++i) {
            lower[i] /= pivot[i - 1];
            pivot[i] -= lower[i] * upper[i - 1];
        }
    }

    void solve(std::vector<double>& rhs) const {
        const std::size_t n = pivot.size();
        for (std::size_t i = 1; i < n; ++i) rhs[i] -= lower[i] * rhs[i - 1];
        rhs[n - 1] /= pivot[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / pivot[i];
    }
};

} // namespace

int worker_count() {
    if (const char* env = std::getenv("HWASYM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> simulate_paths(const ModelParams& m, double t, const McConfig& cfg) {
    if (!(t > 0)) throw DomainError("simulate requires t > 0");
    if (cfg.paths < 1) throw DomainError("simulate requires paths >= 1");
    if (!(cfg.dt > 0) || cfg.dt * 1.0 > 0.1) throw DomainError("McConfig: dt * max|b'| must not exceed 0.1");
    std::vector<double> out(cfg.paths);
    const long blocks = (cfg.paths + block_paths - 1) / block_paths;
    const int workers = std::max(1, std::min<int>(cfg.threads > 0 ? cfg.threads : worker_count(), int(blocks)));
    auto run = [&](int w) {
        for (long b = w; b < blocks; b += workers) {
            long first = b * block_paths;
            simulate_block(m, t, cfg, b, out.data() + first, std::min(block_paths, cfg.paths - first));
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    return out;
}

double silverman_bandwidth(const std::vector<double>& s) {
    const double n = double(s.size());
    if (s.size() < 2) throw DomainError("silverman_bandwidth needs at least two samples");
    double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    double sd = std::sqrt(var / (n - 1));
    std::vector<double> c = s;
    auto q = [&](double f) {
        auto it = c.begin() + long(f * (c.size() - 1));
        std::nth_element(c.begin(), it, c.end());
        return *it;
    };
    double iqr = q(0.75) - q(0.25);
    double spread = iqr > 0 ? std::min(sd, iqr / 1.34) : sd;
    if (!(spread > 0)) throw NumericError("silverman_bandwidth: degenerate sample");
    return 0.9 * spread * std::pow(n, -0.2);
}

EmpiricalDensity kde(const std::vector<double>& samples, const std::vector<double>& xs, double bw) {
    if (!(bw > 0)) throw DomainError("kde requires a positive bandwidth");
    EmpiricalDensity d;
    d.x = xs;
    d.bandwidth = bw;
    d.paths = long(samples.size());
    const double n = double(samples.size());
    const double norm = 1.0 / (bw * std::sqrt(2.0 * pi));
    for (double x : xs) {
        double s1 = 0.0, s2 = 0.0;
        for (double v : samples) {
            double u = (x - v) / bw;
            if (std::fabs(u) > 40.0) continue;
            double k = norm * std::exp(-0.5 * u * u);
            s1 += k;
            s2 += k * k;
        }
        double mean = s1 / n;
        double var = std::max(0.0, s2 / n - mean * mean);
        d.density.push_back(mean);
        d.std_error.push_back(std::sqrt(var / n));
    }
    return d;
}

EmpiricalDensity simulate(const ModelParams& m, double t, const std::vector<double>& xs, const McConfig& cfg) {
    auto s = simulate_paths(m, t, cfg);
    double bw = cfg.bandwidth > 0 ? cfg.bandwidth : silverman_bandwidth(s);
    return kde(s, xs, bw);
}

double smooth_with_kernel(const std::function<double(double)>& p, double x, double bw) {
    using Q = boost::math::quadrature::gauss<double, 30>;
    const double L = 9.0;
    auto g = [&](double u) { return p(x + bw * u) * std::exp(-0.5 * u * u) / std::sqrt(2.0 * pi); };
    double kink = -x / bw;
    if (kink > -L && kink < L) return Q::integrate(g, -L, kink) + Q::integrate(g, kink, L);
    return Q::integrate(g, -L, L);
}

PdeGrid default_grid(const ModelParams& m, double t, double dx_scale, double dt) {
    if (!(dx_scale > 0 && dx_scale <= 0.5)) throw DomainError("default_grid: dx_scale must be in (0, 0.5]");
    PdeGrid g;
    double dx = dx_scale / std::max(1.0, m.beta);
    double lo = -m.beta - 8.0;
    double hi = m.x0 + 6.0 * std::sqrt(2.0 * t);
    g.x_lo = -std::ceil(-lo / dx) * dx;
    g.nx = int(std::ceil((hi - g.x_lo) / dx));
    g.x_hi = g.x_lo + g.nx * dx;
    g.dt = dt > 0 ? dt : std::min(2e-3, 0.07 / (m.beta * m.beta));
    return g;
}

double PdeSolution::log_at(double x) const {
    const int n = int(p.size());
    double u = (x - x_lo) / dx - 0.5;
    int i = std::clamp(int(std::floor(u)) - 1, 0, n - 4);
    double w = u - i;
    double y[4];
    for (int k = 0; k < 4; ++k) y[k] = std::log(std::max(p[i + k], 1e-300));
    // Cubic Lagrange interpolation of log p through nodes 0..3.
    return -y[0] * (w - 1) * (w - 2) * (w - 3) / 6 + y[1] * w * (w - 2) * (w - 3) / 2 -
           y[2] * w * (w - 1) * (w - 3) / 2 + y[3] * w * (w - 1) * (w - 2) / 6;
}

PdeSolution pde_solve(const ModelParams& m, double t, const PdeGrid& g) {
    if (!(t > g.t_start) || g.t_start < 0) throw DomainError("pde_solve requires t > t_start >= 0");
    if (g.nx < 3 || !(g.x_hi > g.x_lo) || !(g.dt > 0)) throw DomainError("pde_solve: invalid grid");
    PdeSolution sol;
    sol.x_lo = g.x_lo;
    sol.dx = (g.x_hi - g.x_lo) / g.nx;
    const double dx = sol.dx;
    if (dx > 0.5 / m.beta * (1.0 + 1e-12)) throw DomainError("pde_solve requires dx <= 0.5/beta");
    if (!(m.x0 > g.x_lo && m.x0 < g.x_hi)) throw DomainError("pde_solve: x0 outside the grid");
    const int n = g.nx;

    // Face i sits between cells i and i+1; fluxes J = (a_i p_i - c_i p_{i+1}) / dx.
    std::vector<double> a(n - 1), c(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        double v = potential(sol.center(i), m.beta) - potential(sol.center(i + 1), m.beta);
        a[i] = bernoulli_fn(-v);
        c[i] = bernoulli_fn(v);
    }

    std::vector<double>& p = sol.p;
    p.assign(n, 0.0);
    if (g.t_start > 0) {
        for (int i = 0; i < n; ++i) {
            double x = sol.center(i);
            p[i] = x > 0 ? p_bm(x * std::sqrt(m.eps), g.t_start, m) : 0.0;
        }
        double mass = std::accumulate(p.begin(), p.end(), 0.0) * dx;
        for (double& v : p) v /= mass;
    } else {
        double u = (m.x0 - g.x_lo) / dx - 0.5;
        int i = std::clamp(int(std::floor(u)), 0, n - 2);
        double w = u - i;
        p[i] = (1.0 - w) / dx;
        p[i + 1] = w / dx;
    }

    const long steps = std::max(1L, long(std::ceil((t - g.t_start) / g.dt - 1e-9)));
    const double h = (t - g.t_start) / steps;
    const double r = h / (dx * dx);
    auto apply = [&](const std::vector<double>& q, std::vector<double>& out) {
        for (int i = 0; i < n; ++i) {
            double right = i < n - 1 ? a[i] * q[i] - c[i] * q[i + 1] : 0.0;
            double left = i > 0 ? a[i - 1] * q[i - 1] - c[i - 1] * q[i] : 0.0;
            out[i] = left - right;
        }
    };
    // I - s A for the step weight s = theta r.
    auto factor = [&](double s) {
        std::vector<double> lower(n), diag(n), upper(n);
        for (int i = 0; i < n; ++i) {
            double out = (i < n - 1 ? a[i] : 0.0) + (i > 0 ? c[i - 1] : 0.0);
            diag[i] = 1.0 + s * out;
            lower[i] = i > 0 ? -s * a[i - 1] : 0.0;
            upper[i] = i < n - 1 ? -s * c[i] : 0.0;
        }
        return Tridiag(std::move(lower), std::move(diag), std::move(upper));
    };

    std::vector<double> aq(n);
    const double mass0 = std::accumulate(p.begin(), p.end(), 0.0) * dx;
    if (g.scheme == PdeScheme::explicit_euler) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, (i < n - 1 ? a[i] : 0.0) + (i > 0 ? c[i - 1] : 0.0));
        if (r * worst > 1.0) throw DomainError("pde_solve: explicit step violates the CFL bound dt <= dx^2 / max(a + c)");
        for (long k = 0; k < steps; ++k) {
            apply(p, aq);
            for (int i = 0; i < n; ++i) p[i] += r * aq[i];
        }
    } else if (g.scheme == PdeScheme::crank_nicolson) {
        // Four fully implicit quarter-steps damp the delta start before the centred steps.
        Tridiag quarter = factor(0.25 * r);
        for (int k = 0; k < 4; ++k) quarter.solve(p);
        Tridiag half = factor(0.5 * r);
        for (long k = 1; k < steps; ++k) {
            apply(p, aq);
            for (int i = 0; i < n; ++i) p[i] += 0.5 * r * aq[i];
            half.solve(p);
        }
    } else {
        Tridiag full = factor(r);
        for (long k = 0; k < steps; ++k) full.solve(p);
    }
    sol.mass_drift = std::accumulate(p.begin(), p.end(), 0.0) * dx - mass0;
    return sol;
}

std::vector<double> pde_log_density(const ModelParams& m, double t, const std::vector<double>& xs, const PdeGrid& g) {
    // Implicit Euler keeps p positive far into the tails; its error is removed by Richardson
    // steps at dt, dt/2, dt/4 (all powers of dt) and then at dx, dx/2 (even powers of dx).
    auto time_extrapolated = [&](const PdeGrid& base) {
        PdeGrid cg = base;
        cg.scheme = PdeScheme::implicit_euler;
        std::vector<std::vector<double>> levels;
        for (int k = 0; k < 3; ++k) {
            PdeSolution s = pde_solve(m, t, cg);
            std::vector<double> v;
            for (double x : xs) v.push_back(s.log_at(x));
            levels.push_back(std::move(v));
            cg.dt *= 0.5;
        }
        std::vector<double> out;
        for (std::size_t k = 0; k < xs.size(); ++k) out.push_back((8.0 * levels[2][k] - 6.0 * levels[1][k] + levels[0][k]) / 3.0);
        return out;
    };
    std::vector<double> coarse = time_extrapolated(g);
    PdeGrid fg = g;
    fg.nx = 2 * g.nx;
    std::vector<double> fine = time_extrapolated(fg);
    std::vector<double> out(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
    return out;
}

} // namespace hwasym
