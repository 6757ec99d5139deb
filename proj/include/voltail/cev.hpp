// Stopped constant-elasticity-of-variance analytics: transition density,
// absorption probability, right-tail asymptote, and large-strike implied
// variance slopes for CEV and local-volatility models.

#pragma once

#include <stdexcept>

namespace voltail {

// dX = delta * X^{1+beta} dW, beta < 0, stopped at the first passage to zero.
struct CevParams {
    double delta;
    double beta;
    double x0;
    double T;

    double nu() const { return 1.0 / (2.0 * std::abs(beta)); }
    void validate() const {
        if (!(delta > 0.0) || !(beta < 0.0) || !(x0 > 0.0) || !(T > 0.0))
            throw std::invalid_argument("CevParams requires delta,x0,T > 0 and beta < 0");
    }
};

// Transition density p(T; x0, x) of the stopped process (defective: it
// integrates to 1 minus the absorption probability).
double cev_density(const CevParams& p, double x);
double cev_log_density(const CevParams& p, double x);

// 1 - integral of the density (adaptive quadrature with tail truncation).
double cev_absorption_prob(const CevParams& p);

// Closed-form cross-check: Q(nu, x0^{-2 beta} / (2 delta^2 beta^2 T)).
double cev_absorption_prob_closed_form(const CevParams& p);

// x^{2|beta|} / (2 delta^2 beta^2 T).
double cev_tail_asymptote(const CevParams& p, double x);

// Benaim-Friz map psi(x) = 2 - 4 (sqrt(x^2+x) - x); psi(0)=2, psi(inf)=0.
double wing_psi(double x);

// Right-wing slope I^2(k)/k ~ k (x0 e^k)^{-2|beta|} delta^2 beta^2 (no T).
double cev_wing_asymptote(const CevParams& p, double k);

// Local-volatility right wing: I^2(k)/k ~ k / (2 E), with E the energy at
// terminal point x0 + k.
double locvol_wing_asymptote(double k, double energy);

} // namespace voltail
