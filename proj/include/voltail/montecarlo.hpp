// Seeded Monte Carlo oracles: bounded-volatility log-stock diffusions, CEV
// with absorption, CIR and its time integral, time-change composition, and
// frequency/expectation estimators with normal-approximation confidence
// intervals.
//
// Determinism contract: all draws are counter-based functions of
// (seed, stream, path index, step), so a fixed seed and config reproduce the
// sample set bitwise, independently of the number of worker threads.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "voltail/cev.hpp"
#include "voltail/timechange.hpp"
#include "voltail/vol_model.hpp"

namespace voltail {

struct McConfig {
    long n_paths = 100000;
    int n_steps = 256;
    std::uint64_t seed = 12345;
    int n_threads = 0; // 0 = hardware concurrency

    void validate() const {
        if (n_paths < 1 || n_steps < 1)
            throw std::invalid_argument("McConfig requires n_paths >= 1 and n_steps >= 1");
    }
};

struct McEstimate {
    double value = 0.0;
    double half_width_95 = 0.0;
    long n_effective = 0;
    // Max single |sample| contribution exceeds 10% of the total |sum|:
    // the standard pre-explosion / max-term dominance diagnostic.
    bool heavy_tail_flag = false;
};

// Euler-Maruyama terminal values of dX = mu(X) dt + sigma(X) dW on [0, t].
std::vector<double> simulate_log_stock(const VolModel& model, const DriftSpec& drift, double x0,
                                       double t, const McConfig& cfg);

struct CevSimResult {
    std::vector<double> terminal; // absorbed paths recorded as 0
    double absorbed_fraction = 0.0;
};

// Euler with absorption: a path is frozen at zero from its first nonpositive
// iterate on.
CevSimResult simulate_cev(const CevParams& p, const McConfig& cfg);

// Full-truncation Euler for the CIR variance, trapezoid for its integral.
// Returns (v_T, int_0^T v ds) per path.
std::vector<std::pair<double, double>> simulate_cir_and_integral(const CirParams& p, double T,
                                                                 const McConfig& cfg);

// S = X_{tau}: one independent CEV path per clock draw, horizon tau_i, with
// the step count scaled proportionally to tau_i (floor of 16 steps).  Clock
// and diffusion use disjoint RNG streams.
std::vector<double> compose_time_change(const CevParams& cev, std::span<const double> clock_samples,
                                        const McConfig& cfg);

McEstimate tail_prob(std::span<const double> samples, double threshold);

McEstimate expectation(std::span<const double> samples,
                       const std::function<double(double)>& transform = nullptr);

} // namespace voltail
