#include <doctest.h>

#include "hwasym/exact.hpp"
#include "hwasym/inversion.hpp"
#include "hwasym/oracle.hpp"

using namespace hwasym;

TEST_SUITE("inversion") {

TEST_CASE("long time limit is the steady state") {
    ModelParams m = ModelParams::from_x0(2.0, 1.0);
    CHECK(std::fabs(invert_bromwich(0.5, 40.0, m).value - steady_density(0.5, m)) < 1e-3);
}

TEST_CASE("representation with the split point") {
    ModelParams m = ModelParams::from_x0(2.0, 1.0);
    double direct = invert_bromwich(0.5, 3.0, m).value;
    CHECK(density_repr(0.5, 3.0, m, -0.6) == doctest::Approx(direct).epsilon(1e-6));
    double neg = invert_bromwich(-0.8, 2.0, m).value;
    CHECK(density_repr(-0.8, 2.0, m, -0.6) == doctest::Approx(neg).epsilon(1e-6));
}

TEST_CASE("split point invariance away from poles") {
    ModelParams m = ModelParams::from_x0(3.0, 1.0);
    std::vector<Pole> p = find_poles(m, 2);
    double a = p[1].theta + 0.2, b = p[1].theta + 0.6;
    SumInt sa = repr_sum_int_pos(0.5, 1.5, m, a), sb = repr_sum_int_pos(0.5, 1.5, m, b);
    CHECK(std::fabs(sa.sum + sa.integral - sb.sum - sb.integral) < 1e-8);
    SumInt na = repr_sum_int_neg(-0.7, 1.5, m, a), nb = repr_sum_int_neg(-0.7, 1.5, m, b);
    CHECK(std::fabs(na.total() - nb.total()) < 1e-8);
}

TEST_CASE("crossing a pole moves one residue term between the parts") {
    ModelParams m = ModelParams::from_x0(3.0, 1.0);
    std::vector<Pole> p = find_poles(m, 3);
    double above = p[1].theta + 0.2, below = p[1].theta - 0.2;
    REQUIRE(below > p[2].theta);
    double x = 0.5, t = 1.5;
    SumInt sa = repr_sum_int_pos(x, t, m, above), sb = repr_sum_int_pos(x, t, m, below);
    double term = sb.sum - sa.sum;
    CHECK(std::fabs(term) > 1e-6);
    CHECK(std::fabs((sa.integral - sb.integral) - term) < 1e-8);
}

TEST_CASE("ground state term alone is the steady state at large t") {
    ModelParams m = ModelParams::from_x0(2.0, 1.0);
    std::vector<Pole> p = find_poles(m, 2);
    SumInt s = repr_sum_int_neg(-0.8, 30.0, m, 0.5 * p[1].theta);
    CHECK(s.sum == doctest::Approx(steady_density(-0.8, m)).epsilon(1e-6));
}

TEST_CASE("agrees with simulation") {
    ModelParams m = ModelParams::from_x0(1.0, 1.0);
    McConfig cfg;
    cfg.paths = 200000;
    EmpiricalDensity e = simulate(m, 1.0, {-0.5}, cfg);
    double s = smooth_with_kernel([&](double x) { return invert_bromwich(x, 1.0, m).value; }, -0.5, e.bandwidth);
    CHECK(std::fabs(e.density[0] - s) < 3.0 * e.std_error[0]);
}

TEST_CASE("reported error is small at moderate beta") {
    ModelParams m = ModelParams::from_x0(3.0, 1.0);
    InversionResult r = invert_bromwich(-0.5, 1.0, m);
    CHECK(r.value > 0.0);
    CHECK(r.error < 1e-7 * r.value);
}

}
