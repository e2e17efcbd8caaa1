#pragma once

#include <vector>

#include "hwasym/common.hpp"

namespace hwasym {

// outgoing: dt/dX < 0 on X < 0; incoming: dt/dX > 0 on X < 0; returned: straight rays in X > 0.
enum class RayBranch { outgoing, incoming, returned };
std::string to_string(RayBranch b);

struct Ray {
    double alpha = 0.0; // launch time at X = 0
    double tau = 0.0;   // time along the ray
    RayBranch branch = RayBranch::outgoing;
};

struct RayPoint {
    double X = 0.0;
    double t = 0.0;
};

// Ray launched from X = 0 at t = alpha into X < 0.
RayPoint ray_point(double alpha, double tau, double X0);
// dX/dtau along the ray.
double ray_velocity(double alpha, double tau, double X0);
// d(X, t)/d(alpha, tau).
double ray_jacobian(double alpha, double tau, double X0);
// Time at which a ray with alpha > X0 comes back to X = 0.
double ray_return_time(double alpha, double X0);
double ray_min_return_time(double X0);

// Outgoing and incoming arrival times at X in (-1, 0); R1 = t - t_out, R2 = t - t_in.
double ray_t_outgoing(double alpha, double X, double X0);
double ray_t_incoming(double alpha, double X, double X0);
double ray_R1(double alpha, double X, double t, double X0);
double ray_R2(double alpha, double X, double t, double X0);

// All rays through (X, t), X < 0, sorted by alpha.
std::vector<Ray> rays_through(double X, double t, double X0);

struct RayFG {
    double F_minus = 0.0;
    double G_minus = 0.0;
    bool singular = false; // tangent to a caustic
};
RayFG ray_F_G(const Ray& ray, double X0);

struct Envelope {
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double t_c = 0.0;
    double t_d = 0.0;
};
Envelope envelope(double X0, double X);

struct ReturnedRays {
    std::vector<Ray> rays; // non-tangent branch first
    double F_R = nan;      // on the non-tangent branch
    double G_R = nan;
    int count = 0;
};
ReturnedRays returned_rays(double X, double t, double X0);

struct RayField {
    double F_minus = nan;
    double G_minus = nan;
    double F_R = nan;
    double G_R = nan;
    std::vector<Ray> rays;
    std::vector<RayFG> values;
};
RayField ray_field(double X, double t, double X0);

// Ray expansion of p(x, t); the middle of three branches is dropped.
AsymptoticDensity ray_density(double X, double t, const ModelParams& m);

// Finite-difference residuals of the eikonal and transport equations on the branch through (X, t) nearest alpha.
double eikonal_residual(double X, double t, double alpha, double X0, double h = 1e-4);
double transport_residual(double X, double t, double alpha, double X0, double h = 1e-3);

// Polyline of one ray from (0, alpha) up to t_max, continuing into X > 0 after a return.
std::vector<RayPoint> ray_polyline(double alpha, double X0, double t_max, int n);

} // namespace hwasym
