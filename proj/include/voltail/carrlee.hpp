// Eigenfunction contracts for time-change recovery.
//
// For a diffusion X run on an independent clock tau, the increasing
// eigenfunction psi_lambda satisfies
//
//   E e^{lambda tau(T)} = E[ psi_lambda(S_T) / psi_lambda(S_0) ]
//
// (brownian kind: psi_lambda(s) = exp(sqrt(2 lambda) log s), i.e. the level
// convention x = log s; cev kind: psi_lambda(s) = sqrt(s) I_nu(sqrt(2 lambda)
// z(s)) with z(s) = s^{-beta} / (delta |beta|), psi_lambda(0+) = 0).
//
// Also: Carr-Madan static replication weights for twice-differentiable
// payoffs, and the sub-exponential feasibility diagnostic for recovering the
// clock law from a single smile.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voltail/cev.hpp"
#include "voltail/montecarlo.hpp"

namespace voltail {

enum class EigenKind { Brownian, Cev };

struct EigenContract {
    double lambda;
    EigenKind kind;
    std::optional<CevParams> cev; // required for the cev kind

    void validate() const;
};

double eigenfunction_value(const EigenContract& c, double s);
double log_eigenfunction_value(const EigenContract& c, double s);

// Sample-based recovery: mean of psi(S_T)/psi(s0) with a 95% half-width.
// Killed cev paths (s = 0) contribute zero.  The heavy-tail flag of the
// returned estimate is the divergence diagnostic for lambda beyond the
// clock's critical moment.
McEstimate recover_clock_laplace(const EigenContract& c, double s0,
                                 std::span<const double> terminal_samples);

// Density-based recovery: quadrature of psi(s)/psi(s0) against a terminal
// density given on a strictly increasing grid (trapezoid rule).
double recover_clock_laplace_density(const EigenContract& c, double s0,
                                     std::span<const double> grid,
                                     std::span<const double> density);

// Twice-differentiable payoff; derivatives fall back to central differences
// when not supplied.
struct Payoff {
    std::function<double(double)> value;
    std::function<double(double)> d1; // optional
    std::function<double(double)> d2; // optional
};

// Static decomposition around the expansion point F:
//   g(S) = g(F) + g'(F) (S - F) + sum_i w_put,i (K_i - S)^+ + sum_i w_call,i (S - K_i)^+
struct ReplicationWeights {
    double forward_point = 0.0;
    double cash = 0.0;
    double forward = 0.0;
    std::vector<double> put_strikes, put_weights;
    std::vector<double> call_strikes, call_weights;

    double reconstruct(double s) const;
};

ReplicationWeights replication_weights(const Payoff& payoff, double forward_point,
                                       std::span<const double> strike_grid);

// Recovery of the clock law needs E exp(theta z(S_T)) finite for every theta,
// i.e. P(tau > x) decaying faster than any exponential: feasible iff the
// digital tail slope is +infinity.
struct FeasibilityVerdict {
    bool feasible = false;
    std::string note;
};

FeasibilityVerdict subexponential_feasibility(double clock_tail_slope);

} // namespace voltail
