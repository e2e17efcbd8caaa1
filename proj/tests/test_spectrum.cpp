#include <doctest.h>

#include <boost/math/quadrature/trapezoidal.hpp>

#include "hwasym/spectrum.hpp"

using namespace hwasym;

TEST_SUITE("spectrum") {

TEST_CASE("below beta* zero is the only pole") {
    for (double b : {1.0, 1.5045, 1.6024, 1.7708, 0.999 * beta_star()}) {
        CAPTURE(b);
        std::vector<Pole> p = find_poles(ModelParams::from_x0(b, 1.19), 5);
        REQUIRE(p.size() == 1);
        CHECK(p[0].N == 0);
        CHECK(p[0].theta == 0.0);
    }
}

TEST_CASE("poles are ordered inside the strip") {
    for (double beta : {3.0, 5.0, 8.0}) {
        ModelParams m = ModelParams::from_x0(beta, 1.0);
        std::vector<Pole> p = find_poles(m, 6);
        REQUIRE(p.size() >= 2);
        CHECK(p[0].theta == 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) {
            CHECK(p[i].theta < p[i - 1].theta);
            CHECK(p[i].theta > -beta * beta / 4.0);
        }
    }
}

TEST_CASE("poles approach the negative integers as beta grows") {
    double prev = inf;
    for (double beta : {3.0, 5.0, 8.0}) {
        std::vector<Pole> p = find_poles(ModelParams::from_x0(beta, 1.0), 3);
        double d = std::fabs(p[1].theta + 1.0);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("first offsets at beta = 4") {
    ModelParams m = ModelParams::from_x0(4.0, 1.0);
    CHECK(pole_asym_leading(1, m) == doctest::Approx(std::exp(-8.0) / (4.0 * std::sqrt(2 * pi))).epsilon(1e-12));
    CHECK(pole_asym_leading(1, m) == doctest::Approx(3.34e-5).epsilon(3e-3));
    CHECK(pole_asym_leading(2, m) == doctest::Approx(std::exp(-8.0) * 4.0 / std::sqrt(2 * pi)).epsilon(1e-12));
    CHECK(pole_asym_leading(2, m) == doctest::Approx(5.35e-4).epsilon(3e-3));
    CHECK(pole_asym(0, m) == 0.0);
    std::vector<Pole> p = find_poles(m, 3);
    for (int N = 1; N <= 2; ++N) {
        double r = (p[N].theta + N) / p[N].asym_offset;
        CHECK(r > 0.5);
        CHECK(r < 2.0);
    }
}

TEST_CASE("uniform and fixed-N offsets converge together") {
    double prev = inf;
    for (double beta : {4.0, 6.0, 8.0, 12.0}) {
        ModelParams m = ModelParams::from_x0(beta, 1.0);
        double d = std::fabs(pole_asym(2, m) / pole_asym_leading(2, m) - 1.0);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.1);
}

TEST_CASE("offsets increase with N") {
    ModelParams m = ModelParams::from_x0(6.0, 1.0);
    for (int N = 1; N < 5; ++N) {
        CHECK(pole_asym(N, m) > 0.0);
        CHECK(pole_asym(N + 1, m) > pole_asym(N, m));
    }
}

TEST_CASE("pole numerator vanishes at each pole") {
    ModelParams m = ModelParams::from_x0(5.0, 1.0);
    for (const Pole& p : find_poles(m, 4)) {
        if (p.N == 0) continue;
        double h = 1e-3 * std::fabs(p.theta + p.N) + 1e-12;
        CHECK(pole_numerator(p.theta - h, m) * pole_numerator(p.theta + h, m) < 0.0);
    }
}

TEST_CASE("residues") {
    ModelParams m4 = ModelParams::from_x0(4.0, 1.0);
    std::vector<Pole> p = find_poles(m4, 5);
    for (const Pole& q : p) CHECK(q.residue > 0.0);
    double ratio = p[1].residue / residue_asym(1, m4);
    CHECK(ratio > 1.0 / 1.5);
    CHECK(ratio < 1.5);
}

TEST_CASE("residue at zero by contour integral") {
    ModelParams m = ModelParams::from_x0(2.0, 1.0);
    auto H = [&](cplx th) {
        PcfValue v = pcf_at_minus_beta(th, m);
        return v.d / (branch_sqrt(th, m) * v.d - v.dd);
    };
    PcfValue v = pcf_at_minus_beta(-0.3, m);
    double num = ((branch_sqrt(-0.3, m) * v.d - v.dd) * std::exp(v.e)).real();
    CHECK(num == doctest::Approx(pole_numerator(-0.3, m)).epsilon(1e-10));
    const double r = 0.1;
    auto f = [&](double s) {
        cplx z = r * std::exp(cplx(0.0, s));
        return (H(z) * z).real();
    };
    double res = boost::math::quadrature::trapezoidal(f, 0.0, 2 * pi, 1e-12) / (2 * pi);
    CHECK(residue_h(find_poles(m, 1)[0], m) == doctest::Approx(res).epsilon(1e-6));
}

TEST_CASE("beta star") {
    double b = beta_star();
    CHECK(std::fabs(b - 1.85722) < 1e-4);
    auto dD = [](double beta) { return pcf_eval(beta * beta / 4.0, -beta).dd.real(); };
    CHECK(dD(b - 1e-3) * dD(b + 1e-3) < 0.0);
    int changes = 0;
    for (double beta = b + 0.05; beta < 6.0; beta += 0.01)
        if (dD(beta) * dD(beta + 0.01) < 0.0) ++changes;
    CHECK(changes >= 1);
}

TEST_CASE("relaxation rate") {
    CHECK(relaxation_rate(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    double bs = beta_star();
    CHECK(relaxation_rate(bs) == doctest::Approx(bs * bs / 4).epsilon(1e-9));
    double r3 = relaxation_rate(3.0);
    CHECK(r3 > 0.0);
    CHECK(r3 < 2.25);
    std::vector<Pole> p = find_poles(ModelParams::from_x0(3.0, 1.0), 2);
    CHECK(r3 == doctest::Approx(-p[1].theta).epsilon(1e-10));
}

}
