#include "voltail/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace voltail {

namespace {

// Ascending series: I_nu(z) = sum_k (z/2)^{2k+nu} / (k! Gamma(k+nu+1)).
// Returns log of the sum; all terms are positive so there is no cancellation.
double log_series(double nu, double z) {
    double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 600; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (term < sum * 1e-17)
            break;
    }
    return nu * std::log(0.5 * z) - std::lgamma(nu + 1.0) + std::log(sum);
}

// Large-argument expansion: I_nu(z) ~ e^z / sqrt(2 pi z) * S(nu, z),
//   S = sum_k (-1)^k a_k,  a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k (8z)).
// Terms are summed while they keep decreasing; at the crossover the smallest
// term is far below 1e-9 relative, which keeps the series/asymptotic switch
// continuous at the tested orders.
double log_asymptotic(double nu, double z) {
    double mu = 4.0 * nu * nu;
    double s = 1.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 12; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * z);
        if (std::abs(term) >= prev)
            break;
        s += term;
        prev = std::abs(term);
        if (prev < 1e-17 * std::abs(s))
            break;
    }
    return z - 0.5 * std::log(2.0 * M_PI * z) + std::log(s);
}

} // namespace

double bessel_i_crossover(double nu) { return std::max(25.0, 10.0 * nu * nu); }

double log_bessel_i(double nu, double z) {
    if (nu < 0.0 || z < 0.0)
        throw std::domain_error("log_bessel_i requires nu >= 0, z >= 0");
    if (z == 0.0) {
        if (nu == 0.0)
            return 0.0;
        return -std::numeric_limits<double>::infinity();
    }
    if (z < bessel_i_crossover(nu))
        return log_series(nu, z);
    return log_asymptotic(nu, z);
}

double bessel_i(double nu, double z) {
    if (nu < 0.0 || z < 0.0)
        throw std::domain_error("bessel_i requires nu >= 0, z >= 0");
    if (z == 0.0)
        return nu == 0.0 ? 1.0 : 0.0;
    return std::exp(log_bessel_i(nu, z));
}

} // namespace voltail
