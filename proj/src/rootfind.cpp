#include "voltail/rootfind.hpp"

#include <cmath>

namespace voltail {

namespace {
bool opposite_signs(double a, double b) {
    return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0);
}
} // namespace

Bracket expand_bracket(const std::function<double(double)>& f, double x0, double step,
                       int max_doublings) {
    if (step <= 0.0)
        step = 1.0;
    double f0 = f(x0);
    if (f0 == 0.0)
        return {x0, x0, 0.0, 0.0};
    double lo = x0 - step, hi = x0 + step;
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < max_doublings; ++i) {
        if (opposite_signs(flo, f0))
            return {lo, x0, flo, f0};
        if (opposite_signs(f0, fhi))
            return {x0, hi, f0, fhi};
        step *= 2.0;
        lo = x0 - step;
        hi = x0 + step;
        flo = f(lo);
        fhi = f(hi);
    }
    throw RootFindError("bracket expansion found no sign change");
}

double find_root(const std::function<double(double)>& f, Bracket br, double x_tol, int max_iter) {
    double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if (!opposite_signs(fa, fb))
        throw RootFindError("find_root called without a sign change");

    for (int i = 0; i < max_iter && std::abs(b - a) > x_tol; ++i) {
        double mid = 0.5 * (a + b);
        double x = mid;
        if (fb != fa) {
            double s = b - fb * (b - a) / (fb - fa);
            // Accept the secant point only if it lies well inside the bracket.
            double lo = std::min(a, b), hi = std::max(a, b);
            double margin = 0.01 * (hi - lo);
            if (s > lo + margin && s < hi - margin)
                x = s;
        }
        double fx = f(x);
        if (fx == 0.0)
            return x;
        if (opposite_signs(fa, fx)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double x_tol,
                 int max_iter) {
    return find_root(f, Bracket{lo, hi, f(lo), f(hi)}, x_tol, max_iter);
}

} // namespace voltail
