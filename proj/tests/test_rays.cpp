#include <doctest.h>

#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"
#include "hwasym/rays.hpp"

using namespace hwasym;

TEST_SUITE("rays") {

TEST_CASE("ray points") {
    for (double a : {0.3, 1.0, 2.5}) {
        RayPoint p = ray_point(a, 0.0, 1.0);
        CHECK(p.X == 0.0);
        CHECK(p.t == a);
    }
    for (double tau : {0.2, 1.0, 3.0}) CHECK(ray_point(1.0, tau, 1.0).X == doctest::Approx(std::expm1(-tau)).epsilon(1e-14));
    RayPoint r = ray_point(2.0, std::log(3.0), 1.0);
    CHECK(std::fabs(r.X) < 1e-15);
    CHECK(ray_return_time(2.0, 1.0) == doctest::Approx(2.0 + std::log(3.0)).epsilon(1e-15));
    CHECK(!std::isfinite(ray_return_time(0.7, 1.0)));
}

TEST_CASE("rays through a point") {
    std::vector<Ray> I = rays_through(-0.3, 1.0, 1.0);
    REQUIRE(I.size() == 1);
    CHECK(I[0].branch == RayBranch::outgoing);
    double X = -0.05;
    NegCurves c = neg_curves(X, 1.0);
    double t = 0.5 * (std::max(c.t_star, c.t_d) + c.t_c);
    std::vector<Ray> V = rays_through(X, t, 1.0);
    REQUIRE(V.size() == 3);
    for (const Ray& r : V) CHECK(r.branch == RayBranch::incoming);
    double Xf = -0.4, tf = 1.0 - std::log1p(Xf);
    bool fluid = false;
    for (const Ray& r : rays_through(Xf, tf, 1.0)) fluid = fluid || std::fabs(r.alpha - 1.0) < 1e-9;
    CHECK(fluid);
}

TEST_CASE("exponent and prefactor") {
    for (double tau : {0.1, 1.0, 4.0}) CHECK(std::fabs(ray_F_G({1.0, tau, RayBranch::outgoing}, 1.0).F_minus) < 1e-15);
    for (double a : {0.4, 2.0}) {
        RayFG v = ray_F_G({a, 0.0, RayBranch::outgoing}, 1.0);
        CHECK(v.G_minus == doctest::Approx(1.0 / (2.0 * std::sqrt(pi * a))).epsilon(1e-13));
    }
    double X = -0.6, t = 1.2;
    double phi = *solve_phis(X, t, 1.0);
    double a = 1.0 / std::sqrt(1.0 + 4.0 * phi);
    CHECK(std::fabs(ray_F_G({a, t - a, RayBranch::outgoing}, 1.0).F_minus - F_and_G(X, t, phi, 1.0).F) < 1e-10);
}

TEST_CASE("envelope") {
    Envelope e = envelope(1.0, -0.05);
    Caustics c = curves_caustic(-0.05, 1.0);
    CHECK(std::fabs(e.t_c - c.t_c) < 1e-12);
    CHECK(std::fabs(e.t_d - c.t_d) < 1e-12);
    for (double al : {e.alpha_plus, e.alpha_minus}) {
        double tau = (al == e.alpha_plus ? e.t_c : e.t_d) - al;
        CHECK(std::fabs(ray_jacobian(al, tau, 1.0)) < 1e-8);
    }
    Envelope near = envelope(1.0, X_cusp(1.0) + 1e-9);
    CHECK(std::fabs(near.alpha_plus - 2.0) < 1e-3);
    CHECK(std::fabs(near.alpha_minus - 2.0) < 1e-3);
}

TEST_CASE("returned rays") {
    CHECK(returned_rays(0.3, curve_t_plus(0.3, 1.0) - 0.1, 1.0).count == 0);
    CHECK(std::fabs(ray_min_return_time(1.0) - t_d_at_zero(1.0)) < 1e-12);
    CHECK(std::fabs(curve_t_plus(0.0, 1.0) - t_d_at_zero(1.0)) < 1e-12);
    ReturnedRays r = returned_rays(0.3, 5.0, 1.0);
    ZStar z = solve_zstar(0.3, 5.0, 1.0);
    CHECK(std::fabs(r.F_R - f_pos(z.z_star, 0.3, 5.0, 1.0)) < 1e-10);
    CHECK(r.F_R == doctest::Approx(-0.77506280306731).epsilon(1e-12));
}

TEST_CASE("eikonal and transport") {
    for (double a : {0.5, 0.8})
        for (double t : {a + 0.3, a + 1.0}) {
            CHECK(std::fabs(eikonal_residual(ray_point(a, t - a, 1.0).X, t, a, 1.0)) < 1e-7);
            CHECK(std::fabs(transport_residual(ray_point(a, t - a, 1.0).X, t, a, 1.0)) < 1e-5);
        }
}

TEST_CASE("ray density") {
    ModelParams m = ModelParams::from_X0(8.0, 1.0);
    for (auto [X, t] : std::vector<std::pair<double, double>>{{-0.3, 1.0}, {-1.3, 2.0}, {-0.5, 1.5}}) {
        AsymptoticDensity r = ray_density(X, t, m), a = density_asym_neg(X, t, m);
        CHECK(std::fabs(r.exponent() - a.exponent()) < 1e-10);
    }
    double X = 0.3, t = curve_t2(X, 1.0) + 1.0;
    AsymptoticDensity p = ray_density(X, t, m);
    double direct = -inf, returned = -inf;
    for (const Branch& b : p.branches) (b.name == "direct" ? direct : returned) = b.F;
    CHECK(returned > direct);
}

TEST_CASE("dominant branch switches across t_gamma") {
    ModelParams m = ModelParams::from_X0(12.0, 1.0);
    double X = -0.03;
    NegConfig off;
    off.cusp_xi = -1.0;
    double tg = curve_t_gamma(X, 1.0);
    Caustics c = curves_caustic(X, 1.0);
    for (double t : {0.5 * (std::max(curve_t_star(X, 1.0), c.t_d) + tg), 0.5 * (tg + c.t_c)}) {
        AsymptoticDensity r = ray_density(X, t, m), a = density_asym_neg(X, t, m, off);
        std::string rd, ad;
        for (const Branch& b : r.branches)
            if (b.dominant) rd = b.name;
        for (const Branch& b : a.branches)
            if (b.dominant) ad = b.name;
        CHECK(rd.back() == ad.back());
    }
}

TEST_CASE("polyline") {
    std::vector<RayPoint> p = ray_polyline(2.0, 1.0, 6.0, 50);
    REQUIRE(p.size() == 50);
    CHECK(p.front().t == 2.0);
    CHECK(p.back().t == doctest::Approx(6.0));
}

}
