#include "hwasym/spectrum.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>

namespace hwasym {

namespace {

struct RealScaled {
    double m = 0.0;
    double e = 0.0;
};

RealScaled numerator(double theta, const ModelParams& m) {
    double s = std::sqrt(std::max(0.0, theta + 0.25 * m.beta * m.beta));
    PcfValue v = pcf_at_minus_beta(theta, m);
    return {(s * v.d - v.dd).real(), v.e};
}

double sign_of(double theta, const ModelParams& m) {
    double v = numerator(theta, m).m;
    return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
}

double bisect_sign(double lo, double hi, const ModelParams& m) {
    double slo = sign_of(lo, m);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double sm = sign_of(mid, m);
        if (sm == 0.0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double phase_pcf_derivative(double beta) { return pcf_eval(0.25 * beta * beta, -beta).dd.real(); }

} // namespace

double pole_numerator(double theta, const ModelParams& m, double ref) {
    RealScaled v = numerator(theta, m);
    return v.m * std::exp(v.e - ref);
}

double pole_asym(int N, const ModelParams& m) {
    if (N == 0) return 0.0;
    double b2 = m.beta * m.beta;
    if (!(4.0 * N < b2)) throw DomainError("pole_asym requires N < beta^2/4");
    double r = std::sqrt(b2 - 4.0 * N);
    double lg = -N - 0.5 * std::log(2.0 * pi) - boost::math::lgamma(double(N)) - 1.5 * std::log(b2 - 4.0 * N) -
                0.5 * m.beta * r + 2.0 * N * std::log(0.5 * (m.beta + r));
    return std::exp(lg);
}

double pole_asym_leading(int N, const ModelParams& m) {
    if (N == 0) return 0.0;
    double lg = -0.5 * m.beta * m.beta + (2.0 * N - 3.0) * std::log(m.beta) - 0.5 * std::log(2.0 * pi) -
                boost::math::lgamma(double(N));
    return std::exp(lg);
}

double residue_asym(int N, const ModelParams& m) {
    double b2 = m.beta * m.beta;
    if (!(4.0 * N < b2)) throw DomainError("residue_asym requires N < beta^2/4");
    double r = std::sqrt(b2 - 4.0 * N);
    double lg = -boost::math::lgamma(N + 1.0) + std::log((m.beta + r) / (2.0 * std::sqrt(2.0 * pi) * r)) +
                2.0 * N * std::log(0.5 * (m.beta + r)) - N - 0.5 * m.beta * r;
    return std::exp(lg);
}

double residue_h(const Pole& pole, const ModelParams& m) {
    double th = pole.theta;
    double b2 = 0.25 * m.beta * m.beta;
    double room = th + b2;
    if (!(room > 0.0)) throw NumericError("residue_h: pole at or below the branch point");
    // Differencing in s = sqrt(theta + beta^2/4), where the numerator is analytic, stays accurate
    // for poles next to the branch point: dh/dtheta = (dh/ds) / (2 s).
    double s = std::sqrt(room);
    PcfValue v = pcf_at_minus_beta(th, m);
    double ref = v.e;
    auto h = [&](double sig) {
        PcfValue w = pcf_at_minus_beta(sig * sig - b2, m);
        return (sig * w.d - w.dd).real() * std::exp(w.e - ref);
    };
    double d = 1e-3 * std::max(s, 0.05);
    double dh = (8.0 * (h(s + d) - h(s - d)) - (h(s + 2 * d) - h(s - 2 * d))) / (12.0 * d);
    return v.d.real() * 2.0 * s / dh;
}

std::vector<Pole> find_poles(const ModelParams& m, int max_n) {
    const double lo_lim = -0.25 * m.beta * m.beta;
    std::vector<Pole> poles;
    Pole p0;
    p0.N = 0;
    p0.theta = 0.0;
    p0.residue = residue_h(p0, m);
    poles.push_back(p0);

    for (int N = 1; N <= max_n; ++N) {
        double hi = -N + 0.5;
        if (hi <= lo_lim) break;
        double lo = std::max(-N - 0.5, lo_lim);
        std::vector<double> pts;
        const int n = 48;
        for (int i = 0; i <= n; ++i) pts.push_back(lo + (hi - lo) * i / n);
        for (int k = 1; k <= 16; ++k) {
            double d = std::pow(10.0, -k);
            if (-N + d < hi && -N + d > lo) pts.push_back(-N + d);
            if (-N - d > lo) pts.push_back(-N - d);
        }
        if (-N > lo) pts.push_back(double(-N));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.front() == lo_lim) pts.front() = lo_lim;
        std::vector<double> sg;
        for (double x : pts) sg.push_back(sign_of(x, m));
        std::vector<double> roots;
        for (std::size_t i = pts.size() - 1; i > 0; --i) {
            if (sg[i] == 0.0) {
                roots.push_back(pts[i]);
            } else if (sg[i - 1] != 0.0 && sg[i - 1] != sg[i]) {
                roots.push_back(bisect_sign(pts[i - 1], pts[i], m));
            }
        }
        if (roots.empty() && -N - 1.0 > lo_lim && 4.0 * N < m.beta * m.beta - 4.0)
            throw NumericError("find_poles: no root bracketed near -" + std::to_string(N));
        for (double r : roots) {
            Pole p;
            p.N = int(poles.size());
            p.theta = r;
            p.asym_offset = 4.0 * p.N < m.beta * m.beta ? pole_asym(p.N, m) : std::nan("");
            p.residue = residue_h(p, m);
            poles.push_back(p);
        }
    }
    std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) { return a.theta > b.theta; });
    for (std::size_t i = 0; i < poles.size(); ++i) poles[i].N = int(i);
    return poles;
}

double beta_star() {
    double lo = 1.0, flo = phase_pcf_derivative(lo);
    for (double b = 1.05; b <= 3.0 + 1e-12; b += 0.05) {
        double fb = phase_pcf_derivative(b);
        if ((fb > 0) != (flo > 0)) {
            double a = b - 0.05, c = b;
            for (int i = 0; i < 100 && c - a > 1e-13; ++i) {
                double mid = 0.5 * (a + c);
                double fm = phase_pcf_derivative(mid);
                if ((fm > 0) == (flo > 0))
                    a = mid;
                else
                    c = mid;
            }
            return 0.5 * (a + c);
        }
        flo = fb;
        lo = b;
    }
    throw NumericError("beta_star: no sign change on (1, 3)");
}

double relaxation_rate(double beta) {
    static const double bs = beta_star();
    if (beta <= bs * (1.0 + 1e-9)) return 0.25 * beta * beta;
    ModelParams m = ModelParams::from_x0(beta, 0.0);
    auto poles = find_poles(m, 2);
    if (poles.size() < 2) throw NumericError("relaxation_rate: no nonzero pole found for beta >= beta*");
    return -poles[1].theta;
}

} // namespace hwasym
