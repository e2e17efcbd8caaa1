#include "hwasym/specfun.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/airy.hpp>
#include <vector>

namespace hwasym {

namespace {

constexpr double log_2pi = 1.8378770664093454836;
constexpr double log_pi = 1.1447298858494001741;

constexpr std::array<double, 9> lanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_sinpi(cplx w) {
    if (std::fabs(w.imag()) < 15.0) return std::log(sinpi(w));
    if (w.imag() < 0.0) return std::conj(log_sinpi(std::conj(w)));
    const cplx i(0.0, 1.0);
    return -i * pi * w + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * pi * i * w));
}

// s * exp(a)
Scaled mul_exp(Scaled s, cplx a) {
    s.m *= std::exp(cplx(0.0, a.imag()));
    s.e += a.real();
    return s;
}

bool is_nonpositive_integer(cplx w) {
    return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::round(w.real());
}

// Bring a and b to a common exponent.
double common_scale(const Scaled& a, const Scaled& b) {
    if (a.m == 0.0) return b.e;
    if (b.m == 0.0) return a.e;
    return std::max(a.e, b.e);
}

cplx rescale(const Scaled& a, double e) { return a.m == 0.0 ? cplx(0.0) : a.m * std::exp(a.e - e); }

Scaled pcf_origin_value(cplx p) {
    Scaled r = rgamma_scaled(0.5 * (1.0 - p));
    return mul_exp(r, 0.5 * p * std::log(2.0) + 0.5 * log_pi);
}

Scaled pcf_origin_deriv(cplx p) {
    Scaled r = rgamma_scaled(-0.5 * p);
    r.m = -r.m;
    return mul_exp(r, 0.5 * (p + 1.0) * std::log(2.0) + 0.5 * log_pi);
}

void normalise(WeberState& s) {
    double m = std::max(std::abs(s.y), std::abs(s.dy));
    if (m > 0.0 && std::isfinite(m)) {
        s.y /= m;
        s.dy /= m;
        s.e += std::log(m);
    }
}

} // namespace

cplx sinpi(cplx w) {
    double n = std::round(w.real());
    cplx s = std::sin(pi * (w - n));
    return std::fmod(std::fabs(n), 2.0) == 1.0 ? -s : s;
}

cplx lgamma_c(cplx w) {
    if (w.real() < 0.5) return log_pi - log_sinpi(w) - lgamma_c(1.0 - w);
    w -= 1.0;
    cplx x = lanczos[0];
    for (int i = 1; i < 9; ++i) x += lanczos[i] / (w + double(i));
    cplx t = w + 7.5;
    return 0.5 * log_2pi + (w + 0.5) * std::log(t) - t + std::log(x);
}

Scaled rgamma_scaled(cplx w) {
    if (is_nonpositive_integer(w)) return {cplx(0.0), 0.0};
    cplx lg = lgamma_c(w);
    return {std::exp(cplx(0.0, -lg.imag())), -lg.real()};
}

cplx rgamma(cplx w) { return rgamma_scaled(w).value(); }

const char* to_string(PcfRegime r) {
    switch (r) {
    case PcfRegime::direct_quadrature: return "direct-quadrature";
    case PcfRegime::ode: return "ode";
    case PcfRegime::symmetry: return "symmetry";
    case PcfRegime::saddle: return "saddle";
    case PcfRegime::reflected_saddle: return "reflected-saddle";
    case PcfRegime::airy_layer: return "airy-layer";
    }
    return "unknown";
}

void weber_integrate(cplx c, double za, double zb, WeberState& s) {
    double z = za;
    const double dir = zb > za ? 1.0 : -1.0;
    while ((zb - z) * dir > 0.0) {
        cplx q0 = 0.25 * z * z + c;
        double scale = std::sqrt(std::abs(q0)) + 0.5 * std::sqrt(std::fabs(z)) + 1.0;
        double step = 1.5 / scale;
        bool last = step >= std::fabs(zb - z);
        double h = last ? zb - z : step * dir;
        double h2 = h * h;
        cplx q1 = 0.5 * z * h;
        cplx bm2 = 0.0, bm1 = 0.0, b0 = s.y, b1 = s.dy * h;
        cplx y = b0 + b1, dy = b1;
        int small = 0;
        for (int n = 0; n < 600; ++n) {
            cplx b2 = h2 * (q0 * b0 + q1 * bm1 + 0.25 * h2 * bm2) / double((n + 2) * (n + 1));
            y += b2;
            dy += double(n + 2) * b2;
            small = std::abs(b2) < 1e-18 * (std::abs(y) + std::abs(dy)) ? small + 1 : 0;
            if (small >= 3 && n > 4) break;
            bm2 = bm1;
            bm1 = b0;
            b0 = b1;
            b1 = b2;
        }
        s.y = y;
        s.dy = dy / h;
        normalise(s);
        z = last ? zb : z + h;
    }
}

PcfValue pcf_ode(cplx p, double z) {
    const cplx c = -p - 0.5;
    const double zr = std::max(z, 0.0);
    const double zt = c.real() < 0.0 ? 2.0 * std::sqrt(-c.real()) : 0.0;
    double z0 = std::max(zr, zt), acc = 0.0;
    while (acc < 20.0) {
        cplx q = 0.25 * z0 * z0 + c;
        double dz = std::max(0.02, 0.5 / (1.0 + std::sqrt(std::abs(q))));
        acc += dz * std::sqrt(q).real();
        z0 += dz;
    }
    z0 += 1.0;
    cplx q = 0.25 * z0 * z0 + c;
    WeberState s;
    s.y = 1.0;
    s.dy = -(std::sqrt(q) + 0.5 * z0 / (4.0 * q));

    WeberState at0, att;
    if (z >= 0.0) {
        weber_integrate(c, z0, z, s);
        att = s;
        weber_integrate(c, z, 0.0, s);
        at0 = s;
    } else {
        weber_integrate(c, z0, 0.0, s);
        at0 = s;
        weber_integrate(c, 0.0, z, s);
        att = s;
    }

    Scaled d0 = pcf_origin_value(p), d1 = pcf_origin_deriv(p);
    double ed = common_scale(d0, d1);
    cplx a = rescale(d0, ed), b = rescale(d1, ed);
    double w = 1.0 / (1.0 + std::sqrt(std::abs(c)));
    double w2 = w * w;
    cplx k = (std::conj(at0.y) * a + w2 * std::conj(at0.dy) * b) /
             (std::norm(at0.y) + w2 * std::norm(at0.dy));
    double resid = (std::abs(a - k * at0.y) + w * std::abs(b - k * at0.dy)) / (std::abs(a) + w * std::abs(b));

    PcfValue r;
    r.d = k * att.y;
    r.dd = k * att.dy;
    r.e = ed - at0.e + att.e;
    r.regime = PcfRegime::ode;
    r.err = resid + 1e-14;
    return r;
}

PcfValue pcf_imag(cplx nu, double z) {
    const cplx c = nu + 0.5;
    Scaled d0 = pcf_origin_value(nu), d1 = pcf_origin_deriv(nu);
    double ed = common_scale(d0, d1);
    WeberState s;
    s.y = rescale(d0, ed);
    s.dy = cplx(0.0, 1.0) * rescale(d1, ed);
    s.e = ed;
    weber_integrate(c, 0.0, z, s);
    PcfValue r;
    r.d = s.y;
    r.dd = s.dy;
    r.e = s.e;
    r.regime = PcfRegime::ode;
    r.err = 1e-14;
    return r;
}

PcfValue pcf_quadrature(cplx p, double z) {
    cplx disc = std::sqrt(z * z - 4.0 * p);
    cplx s1 = 0.5 * (z + disc), s2 = 0.5 * (z - disc);
    cplx sad = s1.real() >= s2.real() ? s1 : s2;
    const double c = std::max(sad.real(), 0.25);
    const double ymid = sad.real() >= 0.25 ? sad.imag() : 0.0;

    auto expo = [&](double y) {
        cplx s(c, y);
        return p * std::log(s) - z * s + 0.5 * s * s;
    };

    cplx hpp = 1.0 - p / (cplx(c, ymid) * cplx(c, ymid));
    double dy = 0.5 / std::sqrt(1.0 + std::abs(hpp));

    // Trapezoid nodes ymid + offset + k*step, k in Z, truncated where the tail is negligible.
    double ref = -inf;
    auto sweep = [&](double step, double offset, std::vector<std::pair<double, cplx>>& out) {
        for (int dir : {1, -1}) {
            int below = 0;
            for (int k = (dir == 1 || offset != 0.0) ? 0 : 1; k < 400000; ++k) {
                double y = ymid + dir * (offset + k * step);
                cplx h = expo(y);
                out.emplace_back(y, h);
                double top = std::max(ref, out.front().second.real());
                below = h.real() < top - 60.0 && std::fabs(y - ymid) > 2.0 ? below + 1 : 0;
                if (below >= 4) break;
            }
        }
    };
    cplx A = 0.0, B = 0.0;
    double absum = 0.0;
    auto add = [&](const std::vector<std::pair<double, cplx>>& v, double wgt) {
        double top = ref;
        for (const auto& nd : v) top = std::max(top, nd.second.real());
        if (top > ref) {
            double f = ref == -inf ? 0.0 : std::exp(ref - top);
            A *= f;
            B *= f;
            absum *= f;
            ref = top;
        }
        for (const auto& [y, h] : v) {
            cplx f = std::exp(h - ref) * wgt;
            A += f;
            B += cplx(c, y) * f;
            absum += std::abs(f);
        }
    };

    std::vector<std::pair<double, cplx>> nodes;
    sweep(dy, 0.0, nodes);
    add(nodes, dy);
    double rel = inf;
    for (int it = 0; it < 14; ++it) {
        std::vector<std::pair<double, cplx>> mid;
        double half = 0.5 * dy;
        cplx A0 = A;
        double ref0 = ref;
        A *= 0.5;
        B *= 0.5;
        absum *= 0.5;
        sweep(dy, half, mid);
        add(mid, half);
        rel = std::abs(A - A0 * std::exp(ref0 - ref)) / std::abs(A);
        dy = half;
        if (rel < 1e-13 && it >= 1) break;
    }

    double kappa = absum / std::abs(A);
    PcfValue r;
    double e = 0.25 * z * z + ref - 0.5 * log_2pi;
    r.d = A;
    r.dd = 0.5 * z * A - B;
    r.e = e;
    r.regime = PcfRegime::direct_quadrature;
    r.err = rel + kappa * 1e-16;
    return r;
}

PcfValue pcf_D_symmetry_eval(cplx theta, double z) {
    if (!(z > 0.0)) throw DomainError("pcf_D_symmetry requires z > 0");
    const cplx i(0.0, 1.0);
    PcfValue a = pcf_ode(-theta, z);
    Scaled va = mul_exp({a.d, a.e}, -i * pi * theta);
    Scaled da = mul_exp({a.dd, a.e}, -i * pi * theta);

    Scaled g = rgamma_scaled(theta);
    PcfValue r;
    r.regime = PcfRegime::symmetry;
    if (g.m == 0.0) {
        r.d = va.m;
        r.dd = -da.m;
        r.e = va.e;
        r.err = a.err;
        return r;
    }
    PcfValue b = pcf_imag(theta - 1.0, z);
    Scaled cb = mul_exp(g, 0.5 * log_2pi + i * pi * (1.0 - theta) * 0.5);
    Scaled vb{cb.m * b.d, cb.e + b.e};
    Scaled db{cb.m * b.dd, cb.e + b.e};
    double e = std::max(va.e, vb.e);
    r.d = rescale(va, e) + rescale(vb, e);
    r.dd = -(rescale(da, e) + rescale(db, e));
    r.e = e;
    double big = std::max(std::abs(rescale(va, e)), std::abs(rescale(vb, e)));
    r.err = (a.err + b.err) * big / std::max(std::abs(r.d), 1e-300);
    return r;
}

PcfValue pcf_eval(cplx p, double z) {
    if (z < 0.0 && std::fabs(p.imag()) < 1.0 && p.real() > -0.5) return pcf_D_symmetry_eval(-p, -z);
    return pcf_ode(p, z);
}

cplx pcf_D(cplx order, double z) {
    if (!(std::abs(order) <= 1e6) || !std::isfinite(z)) throw DomainError("pcf_D: order or argument out of range");
    if (std::abs(order) <= 50.0) {
        PcfValue q = pcf_quadrature(order, z);
        if (q.err < 1e-11) return q.value();
    }
    if (std::abs(order) > 5000.0 && order.imag() == 0.0) {
        double eps = 1.0 / std::fabs(order.real());
        double phi = -order.real() * eps;
        PcfAsym a = pcf_D_asym(phi, z * std::sqrt(eps), eps, -order.real());
        return a.value.value();
    }
    PcfValue v = pcf_eval(order, z);
    if (!(v.err < 1e-6)) throw NumericError("pcf_D: achieved relative accuracy " + std::to_string(v.err));
    return v.value();
}

cplx pcf_D_symmetry(cplx theta, double z) { return pcf_D_symmetry_eval(theta, z).value(); }

LogValue pcf_saddle(double phi, double Z, double eps) {
    double disc = Z * Z + 4.0 * phi;
    if (!(phi > 0.0 || (Z > 0.0 && disc > 0.0))) throw DomainError("saddle form requires phi > 0 or Z > 0");
    double r = std::sqrt(disc);
    double up = 0.5 * (Z + r);
    if (phi > 0.0 && Z < 0.0) up = 2.0 * phi / (r - Z);
    double lg = phi / (2.0 * eps) * std::log(eps) - 0.25 * std::log(disc) + 0.5 * std::log(up) +
                (0.5 * phi - 0.25 * Z * r - (phi == 0.0 ? 0.0 : phi * std::log(up))) / eps;
    return {1.0, lg};
}

LogValue pcf_reflected_saddle(double phi, double Z, double eps, double theta) {
    double disc = Z * Z + 4.0 * phi;
    if (!(phi < 0.0 && Z < 0.0 && disc > 0.0)) throw DomainError("reflected saddle form requires phi < 0, Z < 0");
    double r = std::sqrt(disc);
    double s = 2.0 * sinpi(cplx(theta)).real();
    if (s == 0.0) return {};
    double lg = std::log(std::fabs(s)) + phi / (2.0 * eps) * std::log(eps) - 0.25 * std::log(disc) +
                0.5 * std::log(-2.0 * phi / (r - Z)) +
                (0.5 * phi - 0.25 * Z * r - phi * std::log(0.5 * (-Z - r))) / eps;
    return {s > 0 ? 1.0 : -1.0, lg};
}

double airy_layer_phi(double X, double delta, double eps) {
    double a = 1.0 + X;
    return -0.25 * a * a + std::cbrt(0.25 * a * a) * std::cbrt(eps * eps) * delta;
}

PcfAsym pcf_D_asym(double phi, double Z, double eps, double theta, const PcfAsymConfig& cfg) {
    double disc = Z * Z + 4.0 * phi;
    double window = 0.5 * std::cbrt(Z * Z * Z * Z) * std::cbrt(eps * eps) * cfg.airy_window;
    if (std::fabs(disc) < window && Z < 0.0) {
        double X = -Z - 1.0;
        double a = 1.0 + X;
        double delta = (phi + 0.25 * a * a) / (std::cbrt(0.25 * a * a) * std::cbrt(eps * eps));
        return {pcf_airy_layer(X, delta, eps, theta), PcfRegime::airy_layer};
    }
    if (phi >= 0.0 || (Z > 0.0 && disc > 0.0)) return {pcf_saddle(phi, Z, eps), PcfRegime::saddle};
    if (phi < 0.0 && Z < 0.0 && disc > 0.0)
        return {pcf_reflected_saddle(phi, Z, eps, theta), PcfRegime::reflected_saddle};
    throw DomainError("pcf_D_asym: oscillatory range outside the Airy window");
}

RatioAsym pcf_ratio_asym(double phi, double X, double eps, double pole_margin) {
    if (X == 0.0) return {0.0, 1.0};
    double a1 = 1.0 + X;
    if (X > 0.0) throw DomainError("pcf_ratio_asym requires X <= 0");
    if (a1 > 0.0 && !(phi > -0.25 * a1 * a1)) throw DomainError("pcf_ratio_asym requires phi > -(1+X)^2/4");
    if (a1 <= 0.0 && !(phi > 0.0)) throw DomainError("pcf_ratio_asym requires phi > 0 for X <= -1");
    double theta = phi / eps;
    if (theta < pole_margin) {
        double n = std::round(theta);
        if (n <= 0.0 && std::fabs(theta - n) < pole_margin)
            throw DomainError("pcf_ratio_asym: theta within margin of pole at -N, N = " + std::to_string(int(-n)));
    }
    double a = std::sqrt(1.0 + 4.0 * phi);
    double b = std::sqrt(a1 * a1 + 4.0 * phi);
    double L;
    if (a1 > 0.0)
        L = std::log((b + a1) / (a + 1.0));
    else
        L = std::log(4.0 * phi / (a + 1.0)) - std::log(b - a1);
    RatioAsym r;
    r.exponent = phi * L + 0.25 * (-a + a1 * b);
    r.prefactor = std::pow((1.0 + 4.0 * phi) / (a1 * a1 + 4.0 * phi), 0.25) * std::sqrt((a + 1.0) / (b + a1));
    return r;
}

LogValue pcf_airy_layer(double X, double delta, double eps, double theta, double zero_floor) {
    double a = 1.0 + X;
    if (!(a > 0.0)) throw DomainError("pcf_airy_layer requires X > -1");
    double phi = airy_layer_phi(X, delta, eps);
    double ai = airy(AiryKind::Ai, delta), bi = airy(AiryKind::Bi, delta);
    double s = sinpi(cplx(theta)).real(), c = sinpi(cplx(theta + 0.5)).real();
    double comb = s * bi + c * ai;
    if (std::fabs(comb) <= zero_floor * (std::fabs(bi) + std::fabs(ai)))
        throw NumericError("pcf_airy_layer: argument at a zero of the Airy combination");
    double lg = phi / (2.0 * eps) * std::log(eps) + 0.5 * log_2pi + std::log(a) / 3.0 - std::log(2.0) / 3.0 -
                std::log(eps) / 6.0 + (-0.125 * a * a - phi * std::log(0.5 * a)) / eps + std::log(std::fabs(comb));
    return {comb > 0 ? 1.0 : -1.0, lg};
}

LogValue hermite_He(int N, double Z) {
    if (N < 0) throw DomainError("hermite_He requires N >= 0");
    if (N == 0) return {1.0, 0.0};
    double h0 = 1.0, h1 = Z, e = 0.0;
    for (int n = 1; n < N; ++n) {
        double h2 = Z * h1 - n * h0;
        h0 = h1;
        h1 = h2;
        double m = std::max(std::fabs(h0), std::fabs(h1));
        if (m > 1e150 || (m < 1e-150 && m > 0.0)) {
            h0 /= m;
            h1 /= m;
            e += std::log(m);
        }
    }
    if (h1 == 0.0) return {};
    return {h1 > 0 ? 1.0 : -1.0, std::log(std::fabs(h1)) + e};
}

double hermite_He_quadrature(int N, double Z) {
    double L = std::sqrt(2.0 * N + 1.0) + 12.0;
    double dv = 0.02;
    double sum = 0.0;
    for (double v = -L; v <= L; v += dv) sum += std::pow(cplx(Z, v), N).real() * std::exp(-0.5 * v * v);
    return sum * dv / std::sqrt(2.0 * pi);
}

HermiteAsym hermite_asym(int N, double X, double eps, double margin, double airy_width) {
    if (!(X > -1.0 && X <= 0.0)) throw DomainError("hermite_asym requires X in (-1, 0]");
    if (N < 0) throw DomainError("hermite_asym requires N >= 0");
    double a = 1.0 + X;
    double Z = a / std::sqrt(eps);
    double kappa = N == 0 ? inf : a * a / (4.0 * eps * N);
    double W = (0.25 * a * a - eps * N) / (std::cbrt(0.25 * a * a) * std::cbrt(eps * eps));
    HermiteAsym r;
    r.W = W;
    if (kappa > 1.0 + margin) {
        double S = std::sqrt(0.25 * Z * Z - N);
        double wp = 0.5 * Z + S;
        double wm = N / wp;
        r.value = {1.0, N * std::log(wp) + 0.5 * wm * wm + 0.5 * std::log(wp / (2.0 * S))};
        r.form = HermiteForm::saddle;
        return r;
    }
    if (std::fabs(W) <= airy_width) {
        double ai = airy(AiryKind::Ai, W);
        r.value = LogValue::from(ai);
        if (r.value.sign != 0.0)
            r.value.log += (1.0 / 6.0 - N) * std::log(2.0) + 0.5 * log_pi + (N + 1.0 / 3.0) * std::log(Z) + 0.125 * Z * Z;
        r.form = HermiteForm::airy;
        return r;
    }
    throw DomainError("hermite_asym: between regimes, use hermite_He");
}

double airy(AiryKind kind, double x) {
    return kind == AiryKind::Ai ? boost::math::airy_ai(x) : boost::math::airy_bi(x);
}

double airy_prime(AiryKind kind, double x) {
    return kind == AiryKind::Ai ? boost::math::airy_ai_prime(x) : boost::math::airy_bi_prime(x);
}

} // namespace hwasym
