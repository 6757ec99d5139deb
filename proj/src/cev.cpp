#include "voltail/cev.hpp"

#include <algorithm>
#include <cmath>

#include "voltail/bessel.hpp"
#include "voltail/quadrature.hpp"
#include "voltail/special.hpp"

namespace voltail {

double cev_log_density(const CevParams& p, double x) {
    p.validate();
    if (!(x > 0.0))
        throw std::domain_error("cev density requires x > 0");
    const double ab = std::abs(p.beta);
    const double b2 = p.beta * p.beta;
    const double denom = p.delta * p.delta * b2 * p.T;
    const double z = std::pow(p.x0, -p.beta) * std::pow(x, -p.beta) / denom;
    double log_pref = (-2.0 * p.beta - 1.5) * std::log(x) + 0.5 * std::log(p.x0) -
                      std::log(p.delta * p.delta * ab * p.T);
    double expo = -(std::pow(p.x0, -2.0 * p.beta) + std::pow(x, -2.0 * p.beta)) / (2.0 * denom);
    return log_pref + expo + log_bessel_i(p.nu(), z);
}

double cev_density(const CevParams& p, double x) { return std::exp(cev_log_density(p, x)); }

namespace {

// Upper truncation point: the survived mass beyond it is below e^{-C} since
// -log p >= (x^{|b|} - x0^{|b|})^2 / (2 d^2 b^2 T) for large x.
double upper_cutoff(const CevParams& p, double log_mass = 80.0) {
    double ab = std::abs(p.beta);
    double root = std::pow(p.x0, ab) + std::sqrt(2.0 * p.delta * p.delta * p.beta * p.beta * p.T * log_mass);
    return std::pow(root, 1.0 / ab);
}

} // namespace

double cev_absorption_prob(const CevParams& p) {
    p.validate();
    const double hi = std::max(upper_cutoff(p), 4.0 * p.x0);
    const double split = std::min(p.x0, 1.0);
    auto dens = [&](double x) { return cev_density(p, x); };
    // Near the origin p ~ x^{2|beta|-1}, integrable but possibly unbounded;
    // substitute x = split * u^m with m >= 1/(2|beta|) to flatten it.
    const double m = std::max(1.0, std::ceil(p.nu()));
    double low = integrate_or_throw(
        [&](double u) { return dens(split * std::pow(u, m)) * split * m * std::pow(u, m - 1.0); },
        0.0, 1.0, 1e-9);
    double rest = integrate_or_throw(dens, split, hi, 1e-9);
    double mass = low + rest;
    return std::clamp(1.0 - mass, 0.0, 1.0);
}

double cev_absorption_prob_closed_form(const CevParams& p) {
    p.validate();
    double xtilde = std::pow(p.x0, -2.0 * p.beta) / (2.0 * p.delta * p.delta * p.beta * p.beta * p.T);
    return gamma_q(p.nu(), xtilde);
}

double cev_tail_asymptote(const CevParams& p, double x) {
    p.validate();
    if (!(x > 0.0))
        throw std::domain_error("cev_tail_asymptote requires x > 0");
    return std::pow(x, 2.0 * std::abs(p.beta)) / (2.0 * p.delta * p.delta * p.beta * p.beta * p.T);
}

double wing_psi(double x) {
    if (std::isinf(x))
        return 0.0;
    if (!(x >= 0.0))
        throw std::domain_error("wing_psi requires x >= 0");
    // sqrt(x^2+x) - x written without cancellation for large x.
    double root_minus_x = x > 0.0 ? x / (std::sqrt(x * x + x) + x) : 0.0;
    return 2.0 - 4.0 * root_minus_x;
}

double cev_wing_asymptote(const CevParams& p, double k) {
    p.validate();
    return k * std::pow(p.x0 * std::exp(k), -2.0 * std::abs(p.beta)) * p.delta * p.delta * p.beta *
           p.beta;
}

double locvol_wing_asymptote(double k, double energy) {
    if (!(energy > 0.0))
        throw std::domain_error("locvol_wing_asymptote requires energy > 0");
    return k / (2.0 * energy);
}

} // namespace voltail
