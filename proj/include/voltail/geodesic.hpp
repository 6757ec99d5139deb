// Geodesic distance d(y,u) = int_y^u dz/sigma(z), its inverse, and the
// tail asymptote / sandwich bounds it induces for bounded-volatility
// log-price diffusions.

#pragma once

#include "voltail/vol_model.hpp"

namespace voltail {

// Drift band constants for the sandwich bound.  The paper asserts their
// existence; for constant sigma0 the natural choice is C1 = C2 = -sigma0^2/2.
struct DossBounds {
    double c1;
    double c2;
};

// Signed distance, antisymmetric in (y,u).  Adaptive quadrature, |error| <= 1e-10.
double geodesic_distance(const VolModel& model, double y, double u);

// u such that geodesic_distance(y, u) = x, to |d(y,u) - x| <= 1e-9.
double inverse_geodesic(const VolModel& model, double y, double x);

// d^2(x0, x) / (2 t).
double doss_tail_asymptote(const VolModel& model, double x0, double x, double t);

// (lower, upper) estimates of P(X_t > x):
//   lower = Phi^c((d(x0,x) + |d(c1 t + x0, x0)|) / sqrt(t))
//   upper = Phi^c((d(x0,x) - |d(c2 t + x0, x0)|) / sqrt(t))
struct SandwichTail {
    double lower;
    double upper;
};
SandwichTail doss_sandwich_tail(const VolModel& model, const DossBounds& bounds, double x0,
                                double x, double t);

} // namespace voltail
