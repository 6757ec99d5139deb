#include "voltail/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "voltail/parallel.hpp"
#include "voltail/rng.hpp"

namespace voltail {

std::vector<double> simulate_log_stock(const VolModel& model, const DriftSpec& drift, double x0,
                                       double t, const McConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0))
        throw std::invalid_argument("simulate_log_stock requires t > 0");
    const double h = t / cfg.n_steps;
    const double sqh = std::sqrt(h);
    std::vector<double> out(cfg.n_paths);
    parallel_for(out.size(), cfg.n_threads, [&](std::size_t i) {
        PathRng rng(cfg.seed, RngStream::LogStock, i);
        double x = x0;
        for (int k = 0; k < cfg.n_steps; ++k) {
            double s = k * h;
            double sig = model.sigma(s, x);
            x += drift.mu(model, s, x) * h + sig * sqh * rng.normal(k);
        }
        out[i] = x;
    });
    return out;
}

CevSimResult simulate_cev(const CevParams& p, const McConfig& cfg) {
    p.validate();
    cfg.validate();
    const double h = p.T / cfg.n_steps;
    const double sqh = std::sqrt(h);
    CevSimResult res;
    res.terminal.resize(cfg.n_paths);
    parallel_for(res.terminal.size(), cfg.n_threads, [&](std::size_t i) {
        PathRng rng(cfg.seed, RngStream::Cev, i);
        double s = p.x0;
        for (int k = 0; k < cfg.n_steps; ++k) {
            s += p.delta * std::pow(s, 1.0 + p.beta) * sqh * rng.normal(k);
            if (s <= 0.0) {
                s = 0.0;
                break;
            }
        }
        res.terminal[i] = s;
    });
    long absorbed = 0;
    for (double s : res.terminal)
        if (s == 0.0)
            ++absorbed;
    res.absorbed_fraction = static_cast<double>(absorbed) / cfg.n_paths;
    return res;
}

std::vector<std::pair<double, double>> simulate_cir_and_integral(const CirParams& p, double T,
                                                                 const McConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!(T > 0.0))
        throw std::invalid_argument("simulate_cir_and_integral requires T > 0");
    const double h = T / cfg.n_steps;
    const double sqh = std::sqrt(h);
    std::vector<std::pair<double, double>> out(cfg.n_paths);
    parallel_for(out.size(), cfg.n_threads, [&](std::size_t i) {
        PathRng rng(cfg.seed, RngStream::Cir, i);
        double v = p.v0;
        double integral = 0.0;
        for (int k = 0; k < cfg.n_steps; ++k) {
            double vp = std::max(v, 0.0);
            double vnext = v + p.kappa * (p.theta - vp) * h + p.sigma_v * std::sqrt(vp) * sqh * rng.normal(k);
            integral += 0.5 * h * (std::max(v, 0.0) + std::max(vnext, 0.0));
            v = vnext;
        }
        out[i] = {std::max(v, 0.0), integral};
    });
    return out;
}

std::vector<double> compose_time_change(const CevParams& cev, std::span<const double> clock_samples,
                                        const McConfig& cfg) {
    cev.validate();
    cfg.validate();
    for (double tau : clock_samples)
        if (tau < 0.0)
            throw std::invalid_argument("clock samples must be nonnegative");
    std::vector<double> out(clock_samples.size());
    parallel_for(out.size(), cfg.n_threads, [&](std::size_t i) {
        double tau = clock_samples[i];
        if (tau == 0.0) {
            out[i] = cev.x0;
            return;
        }
        int steps = static_cast<int>(
            std::max(16.0, std::ceil(cfg.n_steps * tau / cev.T)));
        const double h = tau / steps;
        const double sqh = std::sqrt(h);
        PathRng rng(cfg.seed, RngStream::ComposeDiffusion, i);
        double s = cev.x0;
        for (int k = 0; k < steps; ++k) {
            s += cev.delta * std::pow(s, 1.0 + cev.beta) * sqh * rng.normal(k);
            if (s <= 0.0) {
                s = 0.0;
                break;
            }
        }
        out[i] = s;
    });
    return out;
}

McEstimate tail_prob(std::span<const double> samples, double threshold) {
    if (samples.empty())
        throw std::invalid_argument("tail_prob requires nonempty samples");
    const double n = static_cast<double>(samples.size());
    double hits = 0.0;
    for (double s : samples)
        if (s > threshold)
            hits += 1.0;
    McEstimate est;
    est.value = hits / n;
    est.n_effective = samples.size();
    est.half_width_95 = 1.96 * std::sqrt(est.value * (1.0 - est.value) / n);
    est.heavy_tail_flag = hits > 0.0 && 1.0 > 0.1 * hits;
    return est;
}

McEstimate expectation(std::span<const double> samples,
                       const std::function<double(double)>& transform) {
    if (samples.empty())
        throw std::invalid_argument("expectation requires nonempty samples");
    const double n = static_cast<double>(samples.size());
    double sum = 0.0, abs_sum = 0.0, max_abs = 0.0;
    for (double s : samples) {
        double w = transform ? transform(s) : s;
        sum += w;
        abs_sum += std::abs(w);
        max_abs = std::max(max_abs, std::abs(w));
    }
    double mean = sum / n;
    double var = 0.0;
    for (double s : samples) {
        double w = transform ? transform(s) : s;
        var += (w - mean) * (w - mean);
    }
    var = samples.size() > 1 ? var / (n - 1.0) : 0.0;
    McEstimate est;
    est.value = mean;
    est.n_effective = samples.size();
    est.half_width_95 = 1.96 * std::sqrt(var / n);
    est.heavy_tail_flag = abs_sum > 0.0 && max_abs > 0.1 * abs_sum;
    return est;
}

} // namespace voltail
