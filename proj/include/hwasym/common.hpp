#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hwasym {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Invalid arguments or a point outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to converge or bracket.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sign * exp(log); sign is 0 for an exact zero.
struct LogValue {
    double sign = 0.0;
    double log = -inf;

    double value() const { return sign == 0.0 ? 0.0 : sign * std::exp(log); }
    static LogValue from(double v) {
        if (v == 0.0) return {};
        return {v > 0 ? 1.0 : -1.0, std::log(std::fabs(v))};
    }
};

// log(exp(a) + exp(b))
inline double log_sum(double a, double b) {
    if (a == -inf) return b;
    if (b == -inf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

struct ModelParams {
    double beta = 1.0;
    double eps = 1.0;
    double x0 = 0.0;
    double X0 = 0.0;

    static ModelParams from_x0(double beta, double x0) {
        if (!(beta > 0)) throw DomainError("beta must be positive");
        if (!(x0 >= 0)) throw DomainError("x0 must be nonnegative");
        return {beta, 1.0 / (beta * beta), x0, x0 / beta};
    }
    static ModelParams from_X0(double beta, double X0) {
        if (!(beta > 0)) throw DomainError("beta must be positive");
        if (!(X0 >= 0)) throw DomainError("X0 must be nonnegative");
        return {beta, 1.0 / (beta * beta), X0 * beta, X0};
    }
};

// One term G * exp(F / eps) of an asymptotic expansion, with G carried as log G.
struct Branch {
    std::string name;
    double F = 0.0;
    double logG = 0.0;
    bool dominant = false;

    double log_value(double eps) const { return logG + F / eps; }
};

struct AsymptoticDensity {
    std::string regime;
    std::vector<Branch> branches;
    double eps = 1.0;
    bool boundary = false;

    double log_value() const {
        double s = -inf;
        for (const auto& b : branches) s = log_sum(s, b.log_value(eps));
        return s;
    }
    double value() const { return std::exp(log_value()); }
    double scaled_log() const { return eps * log_value(); }
    // F of the branch with the largest contribution.
    double exponent() const {
        double best = -inf, F = 0.0;
        for (const auto& b : branches)
            if (b.log_value(eps) > best) {
                best = b.log_value(eps);
                F = b.F;
            }
        return F;
    }
    void mark_dominant() {
        double best = -inf;
        std::size_t k = 0;
        for (std::size_t i = 0; i < branches.size(); ++i) {
            branches[i].dominant = false;
            if (branches[i].log_value(eps) > best) {
                best = branches[i].log_value(eps);
                k = i;
            }
        }
        if (!branches.empty()) branches[k].dominant = true;
    }
};

enum class Method { asymptotic, inversion, monte_carlo, pde, rays };

struct DensityEstimate {
    double value = 0.0;
    double error = 0.0;
    Method method = Method::asymptotic;
};

} // namespace hwasym
