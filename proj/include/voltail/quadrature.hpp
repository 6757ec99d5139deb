// Adaptive Gauss-Kronrod (G7,K15) quadrature with interval bisection.

#pragma once

#include <functional>
#include <stdexcept>

namespace voltail {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrates f over [a,b] (a may exceed b; the sign flips accordingly) to
// absolute tolerance `abs_tol`.  Bisects until each panel's Kronrod error
// estimate fits its share of the budget, or `max_depth` is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-10, int max_depth = 52);

// Same, but throws QuadratureError instead of returning converged=false.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_depth = 52);

} // namespace voltail
