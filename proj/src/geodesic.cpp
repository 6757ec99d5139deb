#include "voltail/geodesic.hpp"

#include <cmath>
#include <stdexcept>

#include "voltail/quadrature.hpp"
#include "voltail/rootfind.hpp"
#include "voltail/special.hpp"

namespace voltail {

double geodesic_distance(const VolModel& model, double y, double u) {
    if (y == u)
        return 0.0;
    return integrate_or_throw([&](double z) { return 1.0 / model.sigma(z); }, y, u, 1e-10);
}

double inverse_geodesic(const VolModel& model, double y, double x) {
    if (x == 0.0)
        return y;
    // With sigma in [lo,hi], d(y, y + lo*x) <= x <= d(y, y + hi*x), so the
    // analytic bracket below always straddles the target for bounded kinds.
    double lo = model.sigma_lo(), hi = model.sigma_hi();
    double a = y + lo * x, b = y + hi * x;
    if (x < 0.0)
        std::swap(a, b);
    auto f = [&](double u) { return geodesic_distance(model, y, u) - x; };
    double fa = f(a), fb = f(b);
    Bracket br{a, b, fa, fb};
    if (!((fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0))) {
        // Bound violation (e.g. custom models); fall back to doubling expansion.
        br = expand_bracket(f, y + 0.5 * (lo + hi) * x, std::abs(hi * x) + 1.0);
    }
    return find_root(f, br, 1e-12, 300);
}

double doss_tail_asymptote(const VolModel& model, double x0, double x, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("doss_tail_asymptote requires t > 0");
    if (!(x > x0))
        throw std::invalid_argument("doss_tail_asymptote requires x > x0");
    double d = geodesic_distance(model, x0, x);
    return d * d / (2.0 * t);
}

SandwichTail doss_sandwich_tail(const VolModel& model, const DossBounds& bounds, double x0,
                                double x, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("doss_sandwich_tail requires t > 0");
    if (!(x > x0))
        throw std::invalid_argument("doss_sandwich_tail requires x > x0");
    if (bounds.c1 > bounds.c2)
        throw std::invalid_argument("DossBounds requires c1 <= c2");
    double d = geodesic_distance(model, x0, x);
    double shift1 = std::abs(geodesic_distance(model, bounds.c1 * t + x0, x0));
    double shift2 = std::abs(geodesic_distance(model, bounds.c2 * t + x0, x0));
    double rt = std::sqrt(t);
    return {norm_tail((d + shift1) / rt), norm_tail((d - shift2) / rt)};
}

} // namespace voltail
