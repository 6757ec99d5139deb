// Bracketed scalar root finding: secant steps safeguarded by bisection.

#pragma once

#include <functional>
#include <stdexcept>

namespace voltail {

class RootFindError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Bracket {
    double lo, hi;
    double f_lo, f_hi;
};

// Expands [x0 - step, x0 + step] by doubling until f changes sign.
// Throws RootFindError if no sign change is found within `max_doublings`.
Bracket expand_bracket(const std::function<double(double)>& f, double x0, double step,
                       int max_doublings = 60);

// Finds the root inside a sign-changing bracket.  Secant candidates are used
// when they fall inside the bracket and shrink it; otherwise bisection.
// Stops when the bracket width is below x_tol (absolute).
double find_root(const std::function<double(double)>& f, Bracket br, double x_tol = 1e-12,
                 int max_iter = 200);

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol = 1e-12, int max_iter = 200);

} // namespace voltail
