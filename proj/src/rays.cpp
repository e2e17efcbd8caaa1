#include "hwasym/rays.hpp"

#include <algorithm>
#include <functional>

#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"

namespace hwasym {

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 300) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_X0(double X0) {
    if (!(X0 > 0)) throw DomainError("X0 must be positive");
}

// (X+1)^2 - 1 + X0^2/alpha^2 with the last two terms combined.
double disc(double alpha, double X, double X0) {
    double q = 1.0 + X;
    return q * q + (X0 - alpha) * (X0 + alpha) / (alpha * alpha);
}

double alpha_max(double X, double X0) {
    double q = 1.0 + X;
    return X0 / std::sqrt((1.0 - q) * (1.0 + q));
}

RayFG returned_F_G(const Ray& ray, double X0) {
    const double a = ray.alpha;
    if (!(a > X0)) throw DomainError("returned ray needs alpha > X0");
    double b = 0.5 + X0 / (2.0 * a);
    RayFG r;
    r.F_minus = -b * b * ray.tau + X0 / 2.0 - a / 4.0 - X0 * X0 / (4.0 * a) - X0 / (2.0 * a);
    // G^2 dX/dalpha is constant along each straight ray, starting from the incoming value at X = 0.
    double tr = ray_return_time(a, X0);
    RayFG in = ray_F_G({a, tr - a, RayBranch::incoming}, X0);
    double dtr = 1.0 - 2.0 * X0 / ((a - X0) * (a + X0));
    double den = ray.tau / a + dtr;
    r.singular = in.singular || std::fabs(den) < 1e-12 * (std::fabs(dtr) + ray.tau / a);
    r.G_minus = in.G_minus * std::sqrt(std::fabs(dtr / den));
    return r;
}

} // namespace

std::string to_string(RayBranch b) {
    switch (b) {
    case RayBranch::outgoing: return "outgoing";
    case RayBranch::incoming: return "incoming";
    case RayBranch::returned: return "returned";
    }
    return "?";
}

RayPoint ray_point(double alpha, double tau, double X0) {
    check_X0(X0);
    if (!(alpha > 0) || !(tau >= 0)) throw DomainError("ray_point needs alpha > 0 and tau >= 0");
    double a = (alpha - X0) / (2.0 * alpha), b = (alpha + X0) / (2.0 * alpha);
    return {a * std::expm1(tau) + b * std::expm1(-tau), alpha + tau};
}

double ray_velocity(double alpha, double tau, double X0) {
    double a = (alpha - X0) / (2.0 * alpha), b = (alpha + X0) / (2.0 * alpha);
    return a * std::exp(tau) - b * std::exp(-tau);
}

double ray_jacobian(double alpha, double tau, double X0) {
    return X0 / (alpha * alpha) * std::sinh(tau) - ray_velocity(alpha, tau, X0);
}

double ray_return_time(double alpha, double X0) {
    check_X0(X0);
    if (!(alpha > X0)) return inf;
    return alpha + std::log((alpha + X0) / (alpha - X0));
}

double ray_min_return_time(double X0) {
    check_X0(X0);
    return std::sqrt(X0 * (X0 + 2.0)) + 2.0 * std::log((std::sqrt(X0 + 2.0) + std::sqrt(X0)) / std::sqrt(2.0));
}

double ray_t_outgoing(double alpha, double X, double X0) {
    double q = 1.0 + X, D = disc(alpha, X, X0);
    if (D < 0.0) return nan;
    double s = std::sqrt(D);
    double qs = q >= 0.0 ? q + s : (X0 - alpha) * (X0 + alpha) / (alpha * alpha) / (s - q);
    if (!(qs > 0.0)) return nan;
    return alpha + std::log((X0 + alpha) / alpha) - std::log(qs);
}

double ray_t_incoming(double alpha, double X, double X0) {
    double q = 1.0 + X, D = disc(alpha, X, X0);
    if (D < 0.0 || q <= 0.0 || !(alpha >= X0)) return nan;
    return alpha + std::log(alpha * (q + std::sqrt(D)) / (alpha - X0));
}

double ray_R1(double alpha, double X, double t, double X0) { return t - ray_t_outgoing(alpha, X, X0); }
double ray_R2(double alpha, double X, double t, double X0) { return t - ray_t_incoming(alpha, X, X0); }

std::vector<Ray> rays_through(double X, double t, double X0) {
    check_X0(X0);
    if (!(X < 0.0)) throw DomainError("rays_through needs X < 0");
    if (!(t > 0.0)) throw DomainError("t must be positive");
    std::vector<Ray> out;
    const double q = 1.0 + X;
    const double hi = q > 0.0 ? alpha_max(X, X0) : X0;

    // R1 decreases from t at alpha -> 0 to t - t* (or -inf) at the end.
    const double t_end = q > 0.0 ? curve_t_star(X, X0) : inf;
    auto r1 = [&](double a) { return a >= hi ? t - t_end : ray_R1(a, X, t, X0); };
    double lo = t * 1e-15;
    if (r1(lo) > 0.0 && r1(hi) < 0.0) {
        double a = bisect(r1, lo, hi);
        if (a < t) out.push_back({a, t - a, RayBranch::outgoing});
    }

    if (q > 0.0) {
        // R2 is monotone between alpha_d and alpha_c; it runs from -inf at X0 to t - t* at alpha_max.
        std::vector<double> knots{X0};
        if (X > X_cusp(X0)) {
            Caustics c = curves_caustic(X, X0);
            for (double k : {c.alpha_d, c.alpha_c})
                if (k > X0 && k < hi) knots.push_back(k);
        }
        knots.push_back(hi);
        std::sort(knots.begin(), knots.end());
        auto r2 = [&](double a) { return a <= X0 ? -inf : a >= hi ? t - t_end : ray_R2(a, X, t, X0); };
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            double fa = r2(knots[i]), fb = r2(knots[i + 1]);
            if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
                double a = bisect(r2, knots[i], knots[i + 1]);
                if (a < t) out.push_back({a, t - a, RayBranch::incoming});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Ray& a, const Ray& b) { return a.alpha < b.alpha; });
    return out;
}

RayFG ray_F_G(const Ray& ray, double X0) {
    check_X0(X0);
    if (ray.branch == RayBranch::returned) return returned_F_G(ray, X0);
    const double a = ray.alpha, tau = ray.tau;
    double c = (a - X0) / (2.0 * a);
    RayFG r;
    r.F_minus = -0.5 * c * c * std::expm1(2.0 * tau) - (a - X0) * (a - X0) / (4.0 * a);
    double p = a * a + a * X0 - X0, m = a * a - a * X0 - X0;
    double arg = p * std::exp(-2.0 * tau) - m;
    r.singular = std::fabs(arg) < 1e-12 * (std::fabs(p) + std::fabs(m));
    r.G_minus = std::sqrt(X0 / (2.0 * pi)) / std::sqrt(std::fabs(arg));
    return r;
}

Envelope envelope(double X0, double X) {
    check_X0(X0);
    if (!(X > -1.0 && X < 0.0)) throw DomainError("envelope needs X in (-1, 0)");
    const double q = 1.0 + X, aX = -X;
    double d = (X0 + 4.0) * q * q - 4.0;
    if (d < 0.0) throw DomainError("envelope: X outside (X_cusp, 0)");
    Envelope e;
    double A = q * q - 1.0;
    double plus = X0 / (2.0 * aX * (X + 2.0)) * ((X0 + 2.0) * aX * (X + 2.0) + X0 + std::sqrt(X0) * q * std::sqrt(d));
    // Product of the two roots of the quadratic in alpha^2.
    double prod = X0 * X0 * (X + X0 + 2.0) * (X - X0) / A;
    e.alpha_plus = std::sqrt(plus);
    e.alpha_minus = std::sqrt(prod / plus);
    auto t_env = [&](double a) { return a + 0.5 * std::log((a * a + a * X0 - X0) / (a * a - a * X0 - X0)); };
    e.t_c = t_env(e.alpha_plus);
    e.t_d = t_env(e.alpha_minus);
    return e;
}

ReturnedRays returned_rays(double X, double t, double X0) {
    check_X0(X0);
    if (!(X >= 0.0)) throw DomainError("returned_rays needs X >= 0");
    ReturnedRays r;
    auto h = [&](double a) { return a <= X0 ? inf : ray_return_time(a, X0) + X * a / X0 - t; };
    double am = std::sqrt(X0 * X0 + 2.0 * X0 * X0 / (X0 + X));
    if (!(h(am) < 0.0)) return r;
    double a1 = bisect(h, X0, am);
    double top = std::max(t, 2.0 * am);
    double a2 = bisect(h, am, top);
    for (double a : {a1, a2}) r.rays.push_back({a, X * a / X0, RayBranch::returned});
    r.count = 2;
    RayFG v = returned_F_G(r.rays.front(), X0);
    r.F_R = v.F_minus;
    r.G_R = v.G_minus;
    return r;
}

RayField ray_field(double X, double t, double X0) {
    RayField f;
    if (X < 0.0) {
        f.rays = rays_through(X, t, X0);
        double best = -inf;
        for (std::size_t i = 0; i < f.rays.size(); ++i) {
            f.values.push_back(ray_F_G(f.rays[i], X0));
            if (f.rays.size() == 3 && i == 1) continue;
            if (f.values[i].F_minus > best) {
                best = f.values[i].F_minus;
                f.F_minus = f.values[i].F_minus;
                f.G_minus = f.values[i].G_minus;
            }
        }
    } else {
        ReturnedRays rr = returned_rays(X, t, X0);
        f.rays = rr.rays;
        for (const Ray& r : f.rays) f.values.push_back(ray_F_G(r, X0));
        f.F_R = rr.F_R;
        f.G_R = rr.G_R;
    }
    return f;
}

AsymptoticDensity ray_density(double X, double t, const ModelParams& m) {
    const double X0 = m.X0;
    check_X0(X0);
    if (!(t > 0)) throw DomainError("t must be positive");
    AsymptoticDensity out;
    out.eps = m.eps;
    out.regime = "rays";
    if (X >= 0.0) {
        double d = t + X - X0;
        out.branches.push_back({"direct", -d * d / (4.0 * t), -std::log(2.0 * std::sqrt(pi * t))});
        ReturnedRays rr = returned_rays(X, t, X0);
        if (rr.count > 0) out.branches.push_back({"returned", rr.F_R, std::log(rr.G_R)});
        out.mark_dominant();
        return out;
    }
    NegLabel reg = region_of(X, t, X0);
    std::vector<Ray> rays = rays_through(X, t, X0);
    std::size_t expect = reg == NegLabel::IV || reg == NegLabel::V ? 3 : 1;
    if (rays.size() != expect)
        throw NumericError("ray_density: found " + std::to_string(rays.size()) + " rays in Region " + to_string(reg));
    int dom = -1;
    std::vector<RayFG> v;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        v.push_back(ray_F_G(rays[i], X0));
        if (rays.size() == 3 && i == 1) continue;
        if (dom < 0 || v[i].F_minus > v[dom].F_minus) dom = static_cast<int>(i);
    }
    if (v[dom].singular) throw NumericError("ray_density: dominant ray touches a caustic; use the layer form");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if ((rays.size() == 3 && i == 1) || v[i].singular) continue;
        std::string name = to_string(rays[i].branch) + std::to_string(i + 1);
        out.branches.push_back({name, v[i].F_minus, std::log(v[i].G_minus)});
    }
    out.mark_dominant();
    return out;
}

namespace {

// F and G of the branch through (X, t) nearest alpha.
RayFG branch_value(double X, double t, double alpha, double X0) {
    std::vector<Ray> rays = rays_through(X, t, X0);
    if (rays.empty()) throw NumericError("no ray through the point");
    auto it = std::min_element(rays.begin(), rays.end(), [&](const Ray& a, const Ray& b) {
        return std::fabs(a.alpha - alpha) < std::fabs(b.alpha - alpha);
    });
    return ray_F_G(*it, X0);
}

} // namespace

double eikonal_residual(double X, double t, double alpha, double X0, double h) {
    double Fxp = branch_value(X + h, t, alpha, X0).F_minus, Fxm = branch_value(X - h, t, alpha, X0).F_minus;
    double Ftp = branch_value(X, t + h, alpha, X0).F_minus, Ftm = branch_value(X, t - h, alpha, X0).F_minus;
    double Fx = (Fxp - Fxm) / (2.0 * h), Ft = (Ftp - Ftm) / (2.0 * h);
    return Ft - Fx * Fx - (X + 1.0) * Fx;
}

double transport_residual(double X, double t, double alpha, double X0, double h) {
    RayFG c = branch_value(X, t, alpha, X0);
    RayFG xp = branch_value(X + h, t, alpha, X0), xm = branch_value(X - h, t, alpha, X0);
    RayFG tp = branch_value(X, t + h, alpha, X0), tm = branch_value(X, t - h, alpha, X0);
    double Fx = (xp.F_minus - xm.F_minus) / (2.0 * h);
    double Fxx = (xp.F_minus - 2.0 * c.F_minus + xm.F_minus) / (h * h);
    double Gx = (xp.G_minus - xm.G_minus) / (2.0 * h), Gt = (tp.G_minus - tm.G_minus) / (2.0 * h);
    return Gt - (2.0 * Fx + X + 1.0) * Gx - (Fxx + 1.0) * c.G_minus;
}

std::vector<RayPoint> ray_polyline(double alpha, double X0, double t_max, int n) {
    check_X0(X0);
    if (n < 2) throw DomainError("ray_polyline needs n >= 2");
    std::vector<RayPoint> pts;
    if (!(t_max > alpha)) return pts;
    double tr = ray_return_time(alpha, X0);
    for (int i = 0; i < n; ++i) {
        double t = alpha + (t_max - alpha) * i / (n - 1);
        if (t <= tr)
            pts.push_back(ray_point(alpha, t - alpha, X0));
        else
            pts.push_back({X0 / alpha * (t - tr), t});
    }
    return pts;
}

} // namespace hwasym
