// The energy functional
//
//   E(t,x;u,y) = inf over paths g with g(t)=x, g(u)=y of
//                1/2 int_t^u (g'(s) - mu(g))^2 / sigma^2(s, g) ds
//
// computed two independent ways: by shooting on the Euler-Lagrange equation
// (Hamiltonian form, RK4, secant on the initial velocity, multistart), and by
// direct gradient minimization of the discretized functional.  Both report
// the trapezoid energy of their piecewise-linear path so the two solvers are
// directly comparable.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "voltail/vol_model.hpp"

namespace voltail {

struct EnergyProblem {
    double t;
    double u_time;
    double x;
    double y;
    VolModel model;
    DriftSpec drift;

    void validate() const {
        if (!(u_time > t))
            throw std::invalid_argument("EnergyProblem requires u_time > t");
    }
};

enum class EnergyMethod { Shooting, DirectMinimization };

struct EnergySolution {
    double energy = 0.0;
    std::vector<double> path; // n_grid values on the uniform time grid
    EnergyMethod method = EnergyMethod::Shooting;
    double residual = 0.0;    // |path.back() - y|
    int multistart_count = 0;
};

class EnergySolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pointwise Lagrangian (gdot - mu(g))^2 / (2 sigma^2(s,g)).
double lagrangian(const EnergyProblem& p, double s, double g, double gdot);

// Trapezoid energy of the piecewise-linear path through `path` (uniform grid
// on [t, u]).  This is the common functional both solvers report.
double path_energy(const EnergyProblem& p, std::span<const double> path);

EnergySolution solve_euler_lagrange(const EnergyProblem& p, int n_grid = 257, int multistarts = 6);

EnergySolution direct_minimize_energy(const EnergyProblem& p, int n_grid = 257,
                                      int iterations = 2000);

// Coefficient caps for the two-sided a-priori energy bound: 1/lambda <= a <= lambda
// for a = sigma^2/2, and Lambda bounding the drift/zeroth-order norms.
struct NsBounds {
    double lambda_cap; // >= 1
    double Lambda_cap; // >= 0
};

struct NsCheckResult {
    bool inside = false;
    double lower = 0.0;        // |y-x|^2 / (8 lambda dt) - Lambda dt / 4
    double upper = 0.0;        // lambda |y-x|^2 / (2 dt) + Lambda dt / 2
    double lower_margin = 0.0; // energy - lower
    double upper_margin = 0.0; // upper - energy
};

NsCheckResult ns_bounds_check(const EnergyProblem& p, const NsBounds& bounds, double energy);

// Derives (lambda, Lambda) from grid sampling of sigma over [lo, hi] for the
// driftless log-stock operator, using the symmetric coefficient split
// b = -bhat = -(1 + a'/a)/2 with a = sigma^2/2.
NsBounds ns_bounds_from_model(const VolModel& model, double grid_lo = -10.0, double grid_hi = 10.0,
                              int n = 4001);

struct EnergyCurveRow {
    double y = 0.0;
    double energy = 0.0;
    double half_d2 = 0.0; // d^2(x, y) / 2
    EnergyMethod method = EnergyMethod::Shooting;
    double residual = 0.0;
    bool ok = false;
    std::string error;
};

struct EnergyCurveOptions {
    int n_grid = 257;
    int multistarts = 6;
    int n_threads = 0; // 0 = hardware concurrency
};

std::vector<EnergyCurveRow> energy_curve(const VolModel& model, const DriftSpec& drift, double t,
                                         double u_time, double x, std::span<const double> y_grid,
                                         const EnergyCurveOptions& opt = {});

} // namespace voltail
