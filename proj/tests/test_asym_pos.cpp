#include <doctest.h>

#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"
#include "hwasym/exact.hpp"
#include "hwasym/oracle.hpp"

using namespace hwasym;

TEST_SUITE("asym_pos") {

TEST_CASE("t_plus at the origin") {
    double closed = std::sqrt(3.0) + 2.0 * std::log((std::sqrt(3.0) + 1.0) / std::sqrt(2.0));
    CHECK(curve_t_plus(0.0, 1.0) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(std::fabs(curve_t_plus(0.0, 1.0) - 3.0494) < 1e-3);
    for (double X0 : {0.2, 1.0, 5.0}) CHECK(std::fabs(curve_t_plus(0.0, X0) - t_d_at_zero(X0)) < 1e-12);
}

TEST_CASE("t_plus increases") {
    double prev = curve_t_plus(0.0, 1.0);
    for (double X = 0.1; X <= 3.0; X += 0.1) {
        double t = curve_t_plus(X, 1.0);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("double root at t_plus") {
    for (double X : {0.0, 0.4, 1.5}) {
        double X0 = 1.0, zt = 1.0 / (2.0 * (X + X0) + 4.0);
        ZStar z = solve_zstar(X, curve_t_plus(X, X0), X0);
        CHECK(z.z_star == doctest::Approx(zt).epsilon(1e-5));
        CHECK(z.z_star2 == doctest::Approx(zt).epsilon(1e-5));
    }
}

TEST_CASE("critical points beyond t_plus") {
    double X = 0.5, X0 = 1.0;
    for (double t : {4.5, 6.0, 10.0}) {
        ZStar z = solve_zstar(X, t, X0);
        double zt = 1.0 / (2.0 * (X + X0) + 4.0);
        CHECK(z.z_star < zt);
        CHECK(zt < z.z_star2);
        CHECK(z.z_star2 < -z.phi_ss);
        CHECK(std::fabs(zstar_residual(z.z_star, X, t, X0)) < 1e-12);
    }
    ZStar late = solve_zstar(X, 20.0, X0);
    CHECK(late.z_star == doctest::Approx(std::exp(-18.5)).epsilon(0.1));
    ZStar later = solve_zstar(X, 25.0, X0);
    CHECK(std::fabs(f_pos(later.z_star, X, 25.0, X0) - (-0.5 - X)) < 1e-3);
}

TEST_CASE("transition curves") {
    for (double X0 : {0.2, 1.0, 5.0}) CHECK(std::fabs(curve_t1(0.0, X0) - curve_t2(0.0, X0)) < 1e-9);
    CHECK(std::fabs(t2_uform_residual(0.7, 1.0, curve_t2(0.7, 1.0))) < 1e-9);
    CHECK(std::fabs(t1_uform_residual(0.7, 1.0, curve_t1(0.7, 1.0))) < 1e-9);
    CHECK(curve_t1(0.5, 1.0) < curve_t2(0.5, 1.0));
    for (double X : {0.1, 0.5, 2.0}) CHECK(curve_t_plus(X, 1.0) < curve_t1(X, 1.0));
}

TEST_CASE("regimes") {
    CHECK(classify_pos(0.5, 0.8, 1.0).label == PosLabel::i);
    CHECK(classify_pos(0.5, 0.5 * (curve_t1(0.5, 1.0) + curve_t2(0.5, 1.0)), 1.0).label == PosLabel::ii);
    CHECK(classify_pos(0.5, curve_t2(0.5, 1.0) + 1.0, 1.0).label == PosLabel::iii);
}

TEST_CASE("regime i correction is small") {
    ModelParams m = ModelParams::from_X0(6.0, 1.0);
    AsymptoticDensity a = density_asym_pos(0.5, 0.8, m);
    double direct = -inf, rest = -inf;
    for (const Branch& b : a.branches) {
        if (b.name == "direct")
            direct = b.log_value(m.eps);
        else
            rest = log_sum(rest, b.log_value(m.eps));
    }
    REQUIRE(std::isfinite(direct));
    CHECK(rest < direct);
}

TEST_CASE("continuous across the origin") {
    ModelParams m = ModelParams::from_X0(8.0, 1.0);
    for (double t : {curve_t_gamma(-1e-3, 1.0) + 0.5, 6.0}) {
        double right = density_asym_pos(0.0, t, m).scaled_log();
        double left = density_asym_neg(-1e-7, t, m).scaled_log();
        CHECK(std::fabs(right - left) < 1e-3);
    }
}

TEST_CASE("residue sum pieces") {
    ModelParams m = ModelParams::from_X0(8.0, 1.0);
    SumResidueAsym s = sum_residue_asym(0.3, 1.8, m);
    CHECK(s.log_endpoint < log_int_asym_pos(0.3, 1.8, m));
    m = ModelParams::from_X0(1.0 / std::sqrt(0.02), 1.0);
    double t = 1.3 + 2.0 * m.eps * 1.3 * 1.5;
    CHECK(sum_residue_asym(0.3, t, m).form == "near-boundary");
}

TEST_CASE("T scale") {
    ModelParams m = ModelParams::from_X0(8.0, 1.0);
    double X = 0.5;
    CHECK(std::fabs(density_T_scale_pos(X, 30.0, m) / steady_density(X * m.beta, m) - 1.0) < 1e-2);
    double t = std::log(1.0 / m.eps) + 1.0;
    double iii = density_asym_pos(X, t, m, PosConfig{0.05, 0.0}).log_value();
    double T = std::log(density_T_scale_pos(X, 1.0, m));
    CHECK(std::fabs(iii / T - 1.0) < 1e-2);
}

TEST_CASE("approaches the PDE as beta grows") {
    double err[2];
    int k = 0;
    for (double beta : {5.0, 8.0}) {
        ModelParams m = ModelParams::from_X0(beta, 1.0);
        double lp = pde_log_density(m, 4.0, {0.4 * beta}, default_grid(m, 4.0))[0];
        err[k++] = m.eps * std::fabs(lp - density_asym_pos(0.4, 4.0, m).log_value());
    }
    CHECK(err[1] < err[0]);
}

}
