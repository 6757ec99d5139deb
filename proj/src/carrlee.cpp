#include "voltail/carrlee.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "voltail/bessel.hpp"
#include "voltail/timechange.hpp"

namespace voltail {

void EigenContract::validate() const {
    if (!(lambda > 0.0))
        throw std::invalid_argument("EigenContract requires lambda > 0");
    if (kind == EigenKind::Cev) {
        if (!cev)
            throw std::invalid_argument("cev eigenfunction contract needs CevParams");
        cev->validate();
    }
}

double log_eigenfunction_value(const EigenContract& c, double s) {
    c.validate();
    if (!(s > 0.0))
        throw std::domain_error("eigenfunction requires s > 0 (killed paths handled by caller)");
    double root = std::sqrt(2.0 * c.lambda);
    if (c.kind == EigenKind::Brownian)
        return root * std::log(s);
    double z = cev_tail_transform(*c.cev, s);
    return 0.5 * std::log(s) + log_bessel_i(c.cev->nu(), root * z);
}

double eigenfunction_value(const EigenContract& c, double s) {
    return std::exp(log_eigenfunction_value(c, s));
}

McEstimate recover_clock_laplace(const EigenContract& c, double s0,
                                 std::span<const double> terminal_samples) {
    c.validate();
    if (terminal_samples.empty())
        throw std::invalid_argument("recover_clock_laplace requires samples");
    if (!(s0 > 0.0))
        throw std::invalid_argument("recover_clock_laplace requires s0 > 0");
    double log_psi0 = log_eigenfunction_value(c, s0);
    return expectation(terminal_samples, [&](double s) {
        if (s <= 0.0)
            return 0.0; // psi_lambda(0+) = 0 for the cev kind
        return std::exp(log_eigenfunction_value(c, s) - log_psi0);
    });
}

double recover_clock_laplace_density(const EigenContract& c, double s0,
                                     std::span<const double> grid,
                                     std::span<const double> density) {
    c.validate();
    if (grid.size() != density.size() || grid.size() < 2)
        throw std::invalid_argument("density recovery needs matching grid/density arrays");
    double log_psi0 = log_eigenfunction_value(c, s0);
    double sum = 0.0;
    double prev = std::exp(log_eigenfunction_value(c, grid[0]) - log_psi0) * density[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("density grid must be strictly increasing");
        double cur = std::exp(log_eigenfunction_value(c, grid[i]) - log_psi0) * density[i];
        sum += 0.5 * (prev + cur) * (grid[i] - grid[i - 1]);
        prev = cur;
    }
    return sum;
}

double ReplicationWeights::reconstruct(double s) const {
    double v = cash + forward * (s - forward_point);
    for (std::size_t i = 0; i < put_strikes.size(); ++i)
        v += put_weights[i] * std::max(put_strikes[i] - s, 0.0);
    for (std::size_t i = 0; i < call_strikes.size(); ++i)
        v += call_weights[i] * std::max(s - call_strikes[i], 0.0);
    return v;
}

ReplicationWeights replication_weights(const Payoff& payoff, double forward_point,
                                       std::span<const double> strike_grid) {
    if (!payoff.value)
        throw std::invalid_argument("payoff value function is required");
    if (strike_grid.size() < 3)
        throw std::invalid_argument("strike grid needs at least 3 points");
    std::vector<double> ks(strike_grid.begin(), strike_grid.end());
    if (!std::is_sorted(ks.begin(), ks.end()))
        throw std::invalid_argument("strike grid must be increasing");
    if (!(forward_point > ks.front() && forward_point < ks.back()))
        throw std::invalid_argument("forward point must lie inside the strike grid");

    auto d1 = [&](double k) {
        if (payoff.d1)
            return payoff.d1(k);
        double h = 1e-5 * std::max(1.0, std::abs(k));
        return (payoff.value(k + h) - payoff.value(k - h)) / (2.0 * h);
    };
    auto d2 = [&](double k) {
        if (payoff.d2)
            return payoff.d2(k);
        double h = 1e-4 * std::max(1.0, std::abs(k));
        return (payoff.value(k + h) - 2.0 * payoff.value(k) + payoff.value(k - h)) / (h * h);
    };

    // The curvature integrals int g''(K) (K - S)^+ dK (K < F) and
    // int g''(K) (S - K)^+ dK (K > F) are discretized by the trapezoid rule
    // on the strike grid, with F inserted as an integration breakpoint so
    // quadratic payoffs reconstruct exactly at interior grid strikes.
    ReplicationWeights w;
    w.forward_point = forward_point;
    w.cash = payoff.value(forward_point);
    w.forward = d1(forward_point);

    std::vector<double> nodes = ks;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), forward_point);
    if (it == nodes.end() || *it != forward_point)
        nodes.insert(it, forward_point);

    // Each segment lies on one side of F; trapezoid assigns half its length
    // to each endpoint, booked as put mass (segments below F) or call mass.
    std::vector<double> put_mass(nodes.size(), 0.0), call_mass(nodes.size(), 0.0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double half = 0.5 * (nodes[i + 1] - nodes[i]);
        auto& mass = nodes[i + 1] <= forward_point ? put_mass : call_mass;
        mass[i] += half;
        mass[i + 1] += half;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double g2 = d2(nodes[i]);
        if (put_mass[i] > 0.0) {
            w.put_strikes.push_back(nodes[i]);
            w.put_weights.push_back(g2 * put_mass[i]);
        }
        if (call_mass[i] > 0.0) {
            w.call_strikes.push_back(nodes[i]);
            w.call_weights.push_back(g2 * call_mass[i]);
        }
    }
    return w;
}

FeasibilityVerdict subexponential_feasibility(double clock_tail_slope) {
    if (clock_tail_slope < 0.0)
        throw std::invalid_argument("tail slope must be nonnegative");
    FeasibilityVerdict v;
    v.feasible = std::isinf(clock_tail_slope);
    v.note = v.feasible
                 ? "clock tails decay faster than any exponential; eigenfunction-contract "
                   "recovery is available for every transform argument"
                 : "clock tails decay only exponentially (slope " +
                       std::to_string(clock_tail_slope) +
                       "); E exp(theta z(S_T)) diverges beyond the critical transform argument, "
                       "so recovery needs analytic continuation";
    return v;
}

} // namespace voltail
