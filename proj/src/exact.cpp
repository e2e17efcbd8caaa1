#include "hwasym/exact.hpp"

#include <boost/math/special_functions/erf.hpp>

namespace hwasym {

cplx branch_sqrt(cplx theta, const ModelParams& m) { return std::sqrt(theta + 0.25 * m.beta * m.beta); }

PcfValue pcf_at_minus_beta(cplx theta, const ModelParams& m) { return pcf_eval(-theta, -m.beta); }

cplx r_beta(cplx theta, const ModelParams& m) {
    PcfValue v = pcf_at_minus_beta(theta, m);
    if (std::abs(v.d) < 1e-13 * std::abs(v.dd))
        throw NumericError("r_beta: D_{-theta}(-beta) vanishes near theta = " + std::to_string(theta.real()));
    return v.dd / v.d;
}

namespace {

// e^{-x^2/4} D_{-theta}(-beta-x) / D_{-theta}(-beta) times e^{beta(x0-x)/2 - x0 s} / (s - R)
cplx left_expression(double x, cplx theta, cplx s, const PcfValue& base, const ModelParams& m) {
    cplx R = base.dd / base.d;
    PcfValue top = pcf_eval(-theta, -m.beta - x);
    cplx ratio = top.d / base.d * std::exp(top.e - base.e + cplx(-0.25 * x * x));
    return std::exp(0.5 * m.beta * (m.x0 - x) - m.x0 * s) / (s - R) * ratio;
}

} // namespace

TransformParts phat_parts(double x, cplx theta, const ModelParams& m) {
    cplx s = branch_sqrt(theta, m);
    PcfValue base = pcf_at_minus_beta(theta, m);
    TransformParts r;
    if (x >= 0.0) {
        cplx R = base.dd / base.d;
        cplx lead = std::exp(0.5 * m.beta * (m.x0 - x) - (x + m.x0) * s);
        r.p1 = std::exp(0.5 * m.beta * (m.x0 - x) - std::fabs(x - m.x0) * s) / (2.0 * s);
        r.p2 = lead * (-1.0 / (2.0 * s) + 1.0 / (s - R));
    } else {
        r.p2 = left_expression(x, theta, s, base, m);
    }
    return r;
}

cplx phat_left(double x, cplx theta, const ModelParams& m) {
    cplx s = branch_sqrt(theta, m);
    return left_expression(x, theta, s, pcf_at_minus_beta(theta, m), m);
}

cplx phat(double x, cplx theta, const ModelParams& m) { return phat_parts(x, theta, m).total(); }

double log_steady_constant(double beta) {
    if (!(beta > 0)) throw DomainError("steady state requires beta > 0");
    double log_phi = std::log(0.5 * boost::math::erfc(-beta / std::sqrt(2.0)));
    double t = std::log(beta) + 0.5 * beta * beta + 0.5 * std::log(2.0 * pi) + log_phi;
    return -log_sum(0.0, t);
}

double steady_density(double x, const ModelParams& m) {
    double lc = log_steady_constant(m.beta) + std::log(m.beta);
    return x > 0.0 ? std::exp(lc - m.beta * x) : std::exp(lc - m.beta * x - 0.5 * x * x);
}

double p_bm(double X, double t, const ModelParams& m) {
    if (!(t > 0)) throw DomainError("p_bm requires t > 0");
    double d = t + X - m.X0;
    return std::exp(-d * d / (4.0 * m.eps * t)) / (2.0 * std::sqrt(pi * t));
}

double fluid(double t, const ModelParams& m) { return t <= m.X0 ? m.X0 - t : std::expm1(m.X0 - t); }

} // namespace hwasym
