// Independent numerical oracles used by the tests.  These deliberately avoid
// the library's own quadrature/ODE/optimization code paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// Composite Simpson on a fixed uniform grid (panels must be even).
inline double simpson(const std::function<double(double)>& f, double a, double b, long panels) {
    if (panels % 2 != 0)
        ++panels;
    double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (long i = 1; i < panels; ++i)
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = static_cast<double>(i) / a.size();
        double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

inline double ks_critical(std::size_t n, std::size_t m, double c_alpha = 1.628 /* 1% */) {
    return c_alpha * std::sqrt((static_cast<double>(n) + m) / (static_cast<double>(n) * m));
}

// Dense fixed-step RK4 for the Riccati pair B' = lambda - kappa B + s2h B^2,
// A' = kappa theta B.  Returns false (exploded) if |B| leaves [-cap, cap].
struct RiccatiDense {
    double lambda, kappa, sigma_v, theta;
    long n_steps = 200000;
    double cap = 1e9;

    bool integrate(double T, double v0, double& log_value) const {
        double s2h = 0.5 * sigma_v * sigma_v;
        auto fB = [&](double B) { return lambda - kappa * B + s2h * B * B; };
        double B = 0.0, A = 0.0;
        double h = T / n_steps;
        for (long i = 0; i < n_steps; ++i) {
            double k1 = fB(B);
            double k2 = fB(B + 0.5 * h * k1);
            double k3 = fB(B + 0.5 * h * k2);
            double k4 = fB(B + h * k3);
            double a1 = kappa * theta * B;
            double Bmid1 = B + 0.5 * h * k1, Bmid2 = B + 0.5 * h * k2, Bend = B + h * k3;
            double a2 = kappa * theta * Bmid1;
            double a3 = kappa * theta * Bmid2;
            double a4 = kappa * theta * Bend;
            B += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            A += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            if (!std::isfinite(B) || std::abs(B) > cap)
                return false;
        }
        log_value = A + B * v0;
        return true;
    }

    // Bisection for the explosion threshold in lambda.
    static double critical_lambda(double kappa, double theta, double sigma_v, double v0, double T,
                                  long n_steps = 200000) {
        auto explodes = [&](double lam) {
            RiccatiDense r{lam, kappa, sigma_v, theta, n_steps};
            double lv;
            return !r.integrate(T, v0, lv);
        };
        double lo = 0.0, hi = 1.0;
        while (!explodes(hi)) {
            lo = hi;
            hi *= 2.0;
        }
        for (int it = 0; it < 80 && hi - lo > 1e-9 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            (explodes(mid) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }
};

// Closed-form blow-up threshold of the same Riccati equation: lambda such
// that the vertical asymptote of B sits exactly at T.
inline double riccati_critical_lambda_closed_form(double kappa, double sigma_v, double T) {
    // Blow-up time (2/s)(pi/2 + atan(kappa/s)) = T with s = sqrt(2 sigma^2 lambda - kappa^2),
    // i.e. the fixed point of s = (pi + 2 atan(kappa/s)) / T.
    double s = std::max(1.0, 2.0 * M_PI / T);
    for (int i = 0; i < 200; ++i)
        s = (M_PI + 2.0 * std::atan(kappa / s)) / T;
    return (s * s + kappa * kappa) / (2.0 * sigma_v * sigma_v);
}

} // namespace oracles
