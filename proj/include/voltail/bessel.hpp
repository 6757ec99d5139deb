// Modified Bessel function of the first kind I_nu(z) for real order nu >= 0
// and z >= 0, with a log-scaled variant that stays finite for z up to ~1e6.

#pragma once

namespace voltail {

double bessel_i(double nu, double z);

// log I_nu(z); never overflows for the z range used by the CEV density.
double log_bessel_i(double nu, double z);

// Series/asymptotic crossover point used internally (exposed for tests).
double bessel_i_crossover(double nu);

} // namespace voltail
