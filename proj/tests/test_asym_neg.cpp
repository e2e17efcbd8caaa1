#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"
#include "hwasym/oracle.hpp"

using namespace hwasym;

TEST_SUITE("asym_neg") {

TEST_CASE("t_star") {
    double want = 1.0 / std::sqrt(0.75) + std::log(0.5 / (1.0 - std::sqrt(0.75)));
    CHECK(curve_t_star(-0.5, 1.0) == doctest::Approx(want).epsilon(1e-13));
    CHECK(std::fabs(want - 2.4717) < 1e-4);
    double X = -1e-4;
    CHECK(std::fabs(curve_t_star(X, 1.0) * std::sqrt(-2.0 * X) - 1.0) < 0.01);
    CHECK(t_cusp(1.0) > curve_t_star(X_cusp(1.0), 1.0));
}

TEST_CASE("cusp point") {
    CHECK(X_cusp(1.0) == doctest::Approx(-1.0 + 2.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(std::fabs(X_cusp(1.0) + 0.105573) < 1e-6);
    CHECK(t_cusp(1.0) == doctest::Approx(2.0 + std::log(std::sqrt(5.0))).epsilon(1e-14));
    CHECK(std::fabs(t_cusp(1.0) - 2.80472) < 1e-5);
    for (double X0 : {1.0, 2.0, 5.0}) {
        Caustics c = curves_caustic(X_cusp(X0), X0);
        CHECK(std::fabs(c.alpha_c - std::sqrt(X0 * (X0 + 3.0))) < 1e-6);
        CHECK(std::fabs(c.alpha_d - std::sqrt(X0 * (X0 + 3.0))) < 1e-6);
        CHECK(std::fabs(c.t_c - t_cusp(X0)) < 1e-6);
        CHECK(std::fabs(c.t_d - t_cusp(X0)) < 1e-6);
        CHECK(cusp_slope(X0) == doctest::Approx(std::sqrt((X0 + 3.0) * (X0 + 4.0) / X0)).epsilon(1e-14));
    }
}

TEST_CASE("caustics near the origin") {
    for (double X0 : {1.0, 2.0}) {
        double a = std::sqrt(X0 * (X0 + 2.0));
        double td0 = a + std::log((std::sqrt(X0 + 2.0) + std::sqrt(X0)) / (std::sqrt(X0 + 2.0) - std::sqrt(X0)));
        CHECK(t_d_at_zero(X0) == doctest::Approx(td0).epsilon(1e-13));
        Caustics c = curves_caustic(-1e-7, X0);
        CHECK(std::fabs(c.t_d - td0) < 1e-3);
        CHECK(std::fabs(c.alpha_d - a) < 1e-3);
        CHECK(c.t_c > curve_t_star(-1e-3, X0));
    }
}

TEST_CASE("regions") {
    CHECK(region_of(-0.5, 1.0, 1.0) == NegLabel::I);
    CHECK(region_of(-0.5, 3.0, 1.0) == NegLabel::II);
    for (double t : {0.1, 3.0, 40.0}) CHECK(region_of(-1.4, t, 1.0) == NegLabel::I);
    ModelParams m = ModelParams::from_X0(8.0, 1.0);
    CHECK(classify_region(-0.5, 1.5, 1.0, {}, m.eps).label == NegLabel::I);
    double X = -0.05;
    NegCurves c = neg_curves(X, 1.0);
    CHECK(region_of(X, 0.5 * (std::max(c.t_star, c.t_d) + c.t_c), 1.0) == NegLabel::V);
    CHECK(region_of(X, c.t_c + 1.0, 1.0) == NegLabel::VI);
}

TEST_CASE("saddle in phi") {
    for (double t : {0.5, 1.0, 2.0, 5.0})
        CHECK(std::fabs(*solve_phis(-1e-12, t, 1.0) - (1.0 - t * t) / (4.0 * t * t)) < 1e-10);
    double X = -0.4, t = 1.0 - std::log1p(X);
    CHECK(std::fabs(*solve_phis(X, t, 1.0)) < 1e-12);
    double est = 0.5 * std::exp(-9.0);
    CHECK(*solve_phis(-1.5, 10.0, 1.0) == doctest::Approx(est).epsilon(0.1));
    auto phi = solve_phis(-0.5, 2.0, 1.0);
    CHECK(std::fabs(phis_residual(*phi, -0.5, 2.0, 1.0)) < 1e-12);
}

TEST_CASE("roots in z") {
    SaddleRoots II = solve_saddles(-0.5, 3.0, 1.0);
    CHECK(!II.phi_s);
    CHECK(II.z_roots.size() == 1);
    double q = 0.5;
    CHECK(count_sign_changes([&](double z) { return ftilde_prime(z, -0.5, 3.0, 1.0); }, 1e-300, q * q / 4 * (1 - 1e-12),
                             10000, true) == 1);
    double X = -0.05;
    NegCurves c = neg_curves(X, 1.0);
    double t = 0.5 * (std::max(c.t_star, c.t_d) + c.t_c);
    SaddleRoots V = solve_saddles(X, t, 1.0);
    REQUIRE(V.z_roots.size() == 3);
    for (double z : V.z_roots) CHECK(std::fabs(ftilde_prime(z, X, t, 1.0)) < 1e-12);
    ZInflection zi = z_inflections(X_cusp(1.0), 1.0);
    CHECK(zi.z_minus == doctest::Approx(0.1875).epsilon(1e-6));
    CHECK(zi.z_plus == doctest::Approx(0.1875).epsilon(1e-6));
    CHECK(z_at_cusp(1.0) == doctest::Approx(0.1875).epsilon(1e-15));
}

TEST_CASE("ftilde") {
    double X = -0.3, t = 3.0, z = 0.05, h = 1e-5;
    CHECK(std::fabs(ftilde(1e-14, X, t, 1.0) + 0.245) < 1e-9);
    double fd = (ftilde(z + h, X, t, 1.0) - ftilde(z - h, X, t, 1.0)) / (2 * h);
    CHECK(std::fabs(fd - ftilde_prime(z, X, t, 1.0)) < 1e-7);
    double zq = 0.7 * 0.7 / 4.0;
    CHECK(std::fabs(ftilde_prime(zq, X, t, 1.0) - (curve_t_star(X, 1.0) - t)) < 1e-9);
}

TEST_CASE("F and G") {
    double X = -0.4, t = 1.0 - std::log1p(X);
    CHECK(std::fabs(F_and_G(X, t, *solve_phis(X, t, 1.0), 1.0).F) < 1e-12);
    X = -0.5;
    const double h = 1e-4;
    auto F = [&](double s) { return F_and_G(X, s, *solve_phis(X, s, 1.0), 1.0).F; };
    CHECK(std::fabs((F(2.0 + h) - F(2.0 - h)) / (2 * h) - *solve_phis(X, 2.0, 1.0)) < 1e-6);
}

TEST_CASE("Gaussian layer") {
    ModelParams m = ModelParams::from_X0(10.0, 1.0);
    double t = 1.5, Delta = 0.5, X = -1.0 + std::exp(m.X0 - t) + std::sqrt(m.eps) * Delta;
    AsymptoticDensity a = density_asym_neg(X, t, m);
    CHECK(std::fabs(std::exp(a.log_value() - log_density_gaussian_layer(Delta, t, m)) - 1.0) < 0.02);
}

TEST_CASE("T scale limits agree") {
    ModelParams m = ModelParams::from_X0(8.0, 1.0);
    double T = 1.0, t = std::log(1.0 / m.eps) + T;
    for (double X : {-1.3, -0.5}) {
        NegConfig off;
        off.t_scale_ratio = 0.0;
        double region = density_asym_neg(X, t, m, off).log_value();
        CHECK(std::fabs(region / log_density_T_scale_neg(X, T, m) - 1.0) < 1e-2);
    }
}

TEST_CASE("t_star layer bridges Regions I and II") {
    ModelParams m = ModelParams::from_X0(10.0, 1.0);
    NegConfig plain;
    plain.star_window = -1.0;
    double X = -0.5, ts = curve_t_star(X, 1.0), w = std::cbrt(m.eps);
    for (double t : {ts - w, ts + w}) {
        double region = density_asym_neg(X, t, m, plain).log_value();
        CHECK(std::fabs(log_density_t_star_layer(X, t, m) / region - 1.0) < 0.05);
    }
}

TEST_CASE("t_gamma") {
    double X = -0.05;
    Caustics c = curves_caustic(X, 1.0);
    double tg = curve_t_gamma(X, 1.0);
    CHECK(c.t_d < tg);
    CHECK(tg < c.t_c);
    CHECK(std::fabs(curve_t_gamma(X_cusp(1.0) + 1e-4, 1.0) - t_cusp(1.0)) < 1e-3);
    CHECK(std::fabs(curve_t_gamma(-1e-6, 1.0) - curve_t1(0.0, 1.0)) < 1e-3);
}

TEST_CASE("cusp integral") {
    double X0 = 1.0, c = 2.0 * std::pow(X0 + 3.0, 5.5) / (3.0 * std::pow(X0, 2.5));
    double closed = 2.0 * boost::math::tgamma(1.25) * std::pow(c, -0.25);
    auto f = [c](double w) { return std::exp(-c * w * w * w * w); };
    double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -inf, inf, 15, 1e-14);
    CHECK(std::fabs(quad - closed) < 1e-12);
    CHECK(std::fabs(cusp_J(0.0, 0.0, X0) - closed) < 1e-8);
    for (double xi : {-1.0, 0.5})
        for (double eta : {0.7, 2.0}) CHECK(cusp_J(xi, eta, X0) == doctest::Approx(cusp_J(xi, -eta, X0)).epsilon(1e-10));
}

TEST_CASE("cusp layer matches the adjacent regions") {
    auto mismatch = [](double beta, double xi, double eta) {
        ModelParams m = ModelParams::from_X0(beta, 1.0);
        const double X0 = 1.0, se = std::sqrt(m.eps);
        double X = X_cusp(X0) + se * xi;
        double t = t_cusp(X0) + cusp_slope(X0) * se * xi + std::pow(m.eps, 0.75) * eta;
        NegConfig off;
        off.cusp_xi = -1.0;
        off.star_window = -1.0;
        double region = density_asym_neg(X, t, m, off).log_value();
        return std::fabs(log_cusp_density(xi, eta, m) / region - 1.0);
    };
    for (auto [xi, eta] : std::vector<std::pair<double, double>>{{-1.0, -3.0}, {-1.0, 3.0}, {0.5, 3.0}, {0.5, -3.0}})
        CHECK(mismatch(12.0, xi, eta) < 0.15);
    double prev = inf;
    for (double beta : {20.0, 40.0}) {
        double d = mismatch(beta, -3.0, -3.0);
        CHECK(d < 0.15);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("approaches the PDE as beta grows") {
    double err[2];
    int k = 0;
    for (double beta : {5.0, 8.0}) {
        ModelParams m = ModelParams::from_X0(beta, 1.0);
        double lp = pde_log_density(m, 1.5, {-0.5 * beta}, default_grid(m, 1.5))[0];
        err[k++] = m.eps * std::fabs(lp - density_asym_neg(-0.5, 1.5, m).log_value());
    }
    CHECK(err[1] < err[0]);
}

}
