#include "hwasym/inversion.hpp"

#include <algorithm>

namespace hwasym {

InversionResult bromwich(const std::function<cplx(cplx)>& F, double t, const ContourSpec& c) {
    if (!(t > 0)) throw DomainError("bromwich requires t > 0");
    if (c.nodes < 2 || !(c.half_height > 0)) throw DomainError("bromwich: invalid contour");
    const double h = c.half_height / c.nodes;
    const cplx i(0.0, 1.0);
    if (c.shape == ContourShape::vertical && t * h > pi)
        throw NumericError("bromwich: node spacing too coarse for e^{theta t} oscillation; use the residue representation");
    std::vector<double> g(c.nodes + 1);
    for (int k = 0; k <= c.nodes; ++k) {
        double u = k * h;
        if (c.shape == ContourShape::parabolic) {
            cplx th = c.abscissa - c.mu * u * u + 2.0 * i * c.mu * u;
            cplx dth = -2.0 * c.mu * u + 2.0 * i * c.mu;
            g[k] = (std::exp(th * t) * F(th) * dth).imag();
        } else {
            cplx th(c.abscissa, u);
            g[k] = (std::exp(th * t) * F(th)).real();
        }
    }
    auto trap = [&](int stride) {
        double s = 0.5 * g[0];
        for (int k = stride; k <= c.nodes; k += stride) s += (k == c.nodes ? 0.5 : 1.0) * g[k];
        return s * h * stride / pi;
    };
    InversionResult r;
    r.value = trap(1);
    r.error = std::fabs(r.value - trap(2));
    return r;
}

ContourSpec parabolic_contour(double a, double t, double gap_left, double gap_right, double tol) {
    ContourSpec c;
    c.shape = ContourShape::parabolic;
    c.abscissa = a;
    c.mu = std::min({gap_left, gap_right, 1.0 / t});
    double d = std::min(1.0, std::sqrt(1.0 + gap_right / c.mu) - 1.0);
    double budget = -std::log(tol) + c.mu * t * (d * d + 2.0 * d);
    double h = 2.0 * pi * d / budget;
    c.half_height = std::sqrt((-std::log(tol) + 8.0 + std::max(0.0, a * t)) / (c.mu * t)) + 1.0;
    c.nodes = std::max(16, int(std::ceil(c.half_height / h)));
    c.nodes += c.nodes % 2;
    return c;
}

ContourSpec default_contour(double t, const ModelParams& m) {
    (void)m;
    double a = std::min(1.0, 1.0 / t);
    return parabolic_contour(a, t, a, inf);
}

InversionResult invert_bromwich(double x, double t, const ModelParams& m, const ContourSpec& c) {
    auto F = [&](cplx th) { return phat_parts(x, th, m).p2; };
    InversionResult r = bromwich(F, t, c);
    if (x >= 0.0) r.value += p_bm(x * std::sqrt(m.eps), t, m);
    return r;
}

InversionResult invert_bromwich(double x, double t, const ModelParams& m) {
    return invert_bromwich(x, t, m, default_contour(t, m));
}

namespace {

struct ShiftedContour {
    std::vector<Pole> above;
    ContourSpec contour;
};

ShiftedContour shifted(double t, const ModelParams& m, double theta_sa) {
    const double branch = -0.25 * m.beta * m.beta;
    if (!(theta_sa > branch && theta_sa < 0.0)) throw DomainError("theta_sa must lie in (-beta^2/4, 0)");
    auto poles = find_poles(m, int(std::ceil(-theta_sa)) + 1);
    ShiftedContour s;
    double left = theta_sa - branch, right = inf;
    for (const auto& p : poles) {
        double d = p.theta - theta_sa;
        if (std::fabs(d) < 1e-6) throw DomainError("theta_sa collides with pole theta_" + std::to_string(p.N));
        if (d > 0) {
            s.above.push_back(p);
            right = std::min(right, d);
        } else {
            left = std::min(left, -d);
        }
    }
    s.contour = parabolic_contour(theta_sa, t, left, right);
    return s;
}

} // namespace

SumInt repr_sum_int_pos(double x, double t, const ModelParams& m, double theta_sa) {
    if (!(x >= 0.0)) throw DomainError("repr_sum_int_pos requires x >= 0");
    ShiftedContour sc = shifted(t, m, theta_sa);
    SumInt r;
    for (const auto& p : sc.above) {
        double s = std::sqrt(p.theta + 0.25 * m.beta * m.beta);
        r.sum += std::exp(p.theta * t + 0.5 * m.beta * (m.x0 - x) - (x + m.x0) * s) * p.residue;
    }
    auto F = [&](cplx th) { return phat_parts(x, th, m).p2; };
    InversionResult in = bromwich(F, t, sc.contour);
    r.integral = in.value;
    r.error = in.error;
    return r;
}

SumInt repr_sum_int_neg(double x, double t, const ModelParams& m, double theta_sa) {
    if (!(x < 0.0)) throw DomainError("repr_sum_int_neg requires x < 0");
    ShiftedContour sc = shifted(t, m, theta_sa);
    SumInt r;
    for (const auto& p : sc.above) {
        double s = std::sqrt(p.theta + 0.25 * m.beta * m.beta);
        PcfValue top = pcf_eval(-p.theta, -m.beta - x);
        PcfValue base = pcf_at_minus_beta(p.theta, m);
        double ratio = (top.d / base.d).real() * std::exp(top.e - base.e);
        r.sum += std::exp(p.theta * t - 0.25 * x * x + 0.5 * m.beta * (m.x0 - x) - m.x0 * s) * ratio * p.residue;
    }
    auto F = [&](cplx th) { return phat_parts(x, th, m).p2; };
    InversionResult in = bromwich(F, t, sc.contour);
    r.integral = in.value;
    r.error = in.error;
    return r;
}

double density_repr(double x, double t, const ModelParams& m, double theta_sa) {
    if (x >= 0.0) return p_bm(x * std::sqrt(m.eps), t, m) + repr_sum_int_pos(x, t, m, theta_sa).total();
    return repr_sum_int_neg(x, t, m, theta_sa).total();
}

} // namespace hwasym
