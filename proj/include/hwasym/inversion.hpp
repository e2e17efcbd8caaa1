#pragma once

#include <functional>

#include "hwasym/common.hpp"
#include "hwasym/spectrum.hpp"

namespace hwasym {

enum class ContourShape { vertical, parabolic };

// Vertical: theta = abscissa + i y, |y| <= half_height.
// Parabolic: theta = abscissa - mu u^2 + 2 i mu u, |u| <= half_height; same integral when all
// singularities lie on the real axis left of the abscissa or right of it beyond the strip.
struct ContourSpec {
    double abscissa = 1.0;
    double half_height = 10.0;
    int nodes = 200;
    ContourShape shape = ContourShape::parabolic;
    double mu = 1.0;
};

struct InversionResult {
    double value = 0.0;
    double error = 0.0;
};

// (1/2 pi i) int e^{theta t} F(theta) d theta for F with F(conj theta) = conj F(theta).
InversionResult bromwich(const std::function<cplx(cplx)>& F, double t, const ContourSpec& c);

// Parabola through a with mu set by the distance to the nearest singularities on either side.
ContourSpec parabolic_contour(double a, double t, double gap_left, double gap_right, double tol = 1e-13);
ContourSpec default_contour(double t, const ModelParams& m);

InversionResult invert_bromwich(double x, double t, const ModelParams& m, const ContourSpec& c);
InversionResult invert_bromwich(double x, double t, const ModelParams& m);

struct SumInt {
    double sum = 0.0;
    double integral = 0.0;
    double error = 0.0;
    double total() const { return sum + integral; }
};
SumInt repr_sum_int_pos(double x, double t, const ModelParams& m, double theta_sa);
SumInt repr_sum_int_neg(double x, double t, const ModelParams& m, double theta_sa);
// Either representation plus the free Brownian part for x >= 0.
double density_repr(double x, double t, const ModelParams& m, double theta_sa);

} // namespace hwasym
