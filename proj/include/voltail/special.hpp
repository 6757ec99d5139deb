// Small shared special functions: Gaussian tails and the regularized
// incomplete gamma function.

#pragma once

namespace voltail {

// Upper standard normal tail P(Z > z).
double norm_tail(double z);

// log of norm_tail, stable far into the tail (z up to ~1e7).
double log_norm_tail(double z);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a), a > 0, x >= 0.
double gamma_q(double a, double x);

} // namespace voltail
