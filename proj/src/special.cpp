#include "voltail/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace voltail {

double norm_tail(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

double log_norm_tail(double z) {
    if (z < 30.0) {
        double p = norm_tail(z);
        if (p > 0.0)
            return std::log(p);
    }
    // Asymptotic expansion of Mills' ratio: Phi^c(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - ...).
    double z2 = z * z;
    double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
    return -0.5 * z2 - 0.5 * std::log(2.0 * M_PI) - std::log(z) + std::log(series);
}

namespace {

// Lower regularized gamma by series (x < a + 1).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma by continued fraction (x >= a + 1), modified Lentz.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::domain_error("gamma_q requires a > 0, x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

} // namespace voltail
