#include "voltail/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "voltail/geodesic.hpp"
#include "voltail/parallel.hpp"
#include "voltail/rootfind.hpp"

namespace voltail {

double lagrangian(const EnergyProblem& p, double s, double g, double gdot) {
    double sig = p.model.sigma(s, g);
    double v = gdot - p.drift.mu(p.model, s, g);
    return v * v / (2.0 * sig * sig);
}

double path_energy(const EnergyProblem& p, std::span<const double> path) {
    const int n = static_cast<int>(path.size());
    const double dt = (p.u_time - p.t) / (n - 1);
    double sum = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        double s0 = p.t + i * dt;
        double v = (path[i + 1] - path[i]) / dt;
        sum += 0.5 * (lagrangian(p, s0, path[i], v) + lagrangian(p, s0 + dt, path[i + 1], v));
    }
    return sum * dt;
}

namespace {

// Hamiltonian form of the Euler-Lagrange equation with momentum
// q = (g' - mu)/sigma^2:
//   g' = mu(g) + sigma^2(s,g) q
//   q' = -(q mu'(g) + sigma sigma_x q^2)
struct ShotResult {
    double terminal;
    std::vector<double> path;
    std::vector<double> velocity;
    bool blew_up = false;
};

ShotResult shoot(const EnergyProblem& p, double v0, int n_grid, bool record) {
    const double dt = (p.u_time - p.t) / (n_grid - 1);
    const double blowup_cap = 1e8 * std::max(1.0, std::abs(p.y - p.x));
    double sig0 = p.model.sigma(p.t, p.x);
    double g = p.x;
    double q = (v0 - p.drift.mu(p.model, p.t, p.x)) / (sig0 * sig0);

    ShotResult out;
    if (record) {
        out.path.reserve(n_grid);
        out.velocity.reserve(n_grid);
        out.path.push_back(g);
        out.velocity.push_back(v0);
    }
    auto fg = [&](double s, double gg, double qq) {
        double sig = p.model.sigma(s, gg);
        return p.drift.mu(p.model, s, gg) + sig * sig * qq;
    };
    auto fq = [&](double s, double gg, double qq) {
        double sig = p.model.sigma(s, gg);
        return -(qq * p.drift.dmu(p.model, s, gg) + sig * p.model.dsigma(s, gg) * qq * qq);
    };
    for (int i = 0; i + 1 < n_grid; ++i) {
        double s = p.t + i * dt;
        double k1g = fg(s, g, q), k1q = fq(s, g, q);
        double k2g = fg(s + 0.5 * dt, g + 0.5 * dt * k1g, q + 0.5 * dt * k1q);
        double k2q = fq(s + 0.5 * dt, g + 0.5 * dt * k1g, q + 0.5 * dt * k1q);
        double k3g = fg(s + 0.5 * dt, g + 0.5 * dt * k2g, q + 0.5 * dt * k2q);
        double k3q = fq(s + 0.5 * dt, g + 0.5 * dt * k2g, q + 0.5 * dt * k2q);
        double k4g = fg(s + dt, g + dt * k3g, q + dt * k3q);
        double k4q = fq(s + dt, g + dt * k3g, q + dt * k3q);
        g += dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        if (!std::isfinite(g) || !std::isfinite(q) || std::abs(g) > blowup_cap) {
            out.blew_up = true;
            out.terminal = std::numeric_limits<double>::quiet_NaN();
            return out;
        }
        if (record) {
            double sig = p.model.sigma(s + dt, g);
            out.path.push_back(g);
            out.velocity.push_back(p.drift.mu(p.model, s + dt, g) + sig * sig * q);
        }
    }
    out.terminal = g;
    return out;
}

std::vector<double> canonical_starts(const EnergyProblem& p, int multistarts) {
    const double dt = p.u_time - p.t;
    const double vstraight = (p.y - p.x) / dt;
    const double vdrift = p.drift.mu(p.model, p.t, p.x);
    std::vector<double> all{vstraight, vdrift, 0.5 * vstraight, 2.0 * vstraight,
                            0.25 * vstraight, 4.0 * vstraight};
    if (multistarts < 1)
        multistarts = 1;
    if (multistarts < static_cast<int>(all.size()))
        all.resize(multistarts);
    return all;
}

std::optional<EnergySolution> shooting_from_start(const EnergyProblem& p, double v_start,
                                                  int n_grid) {
    auto miss = [&](double v0) { return shoot(p, v0, n_grid, false).terminal - p.y; };

    // Bracket the terminal miss around the start by doubling; blown-up shots
    // poison the bracket, so treat them as failures.
    double f0;
    try {
        f0 = miss(v_start);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!std::isfinite(f0))
        return std::nullopt;

    double scale = std::max({std::abs(v_start), std::abs(p.y - p.x) / (p.u_time - p.t), 1.0});
    Bracket br{v_start, v_start, f0, f0};
    bool bracketed = false;
    double step = 0.25 * scale;
    for (int i = 0; i < 40 && !bracketed; ++i, step *= 2.0) {
        for (double cand : {v_start - step, v_start + step}) {
            double fc;
            try {
                fc = miss(cand);
            } catch (const std::exception&) {
                continue;
            }
            if (!std::isfinite(fc))
                continue;
            if ((fc <= 0.0 && f0 >= 0.0) || (fc >= 0.0 && f0 <= 0.0)) {
                br = cand < v_start ? Bracket{cand, v_start, fc, f0}
                                    : Bracket{v_start, cand, f0, fc};
                bracketed = true;
                break;
            }
        }
    }
    if (!bracketed)
        return std::nullopt;

    double v_root;
    try {
        v_root = find_root(miss, br, 1e-12 * std::max(1.0, std::abs(br.hi)), 300);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    ShotResult final = shoot(p, v_root, n_grid, true);
    if (final.blew_up)
        return std::nullopt;

    EnergySolution sol;
    sol.path = std::move(final.path);
    sol.method = EnergyMethod::Shooting;
    sol.residual = std::abs(final.terminal - p.y);
    sol.energy = path_energy(p, sol.path);
    return sol;
}

// Analytic gradient of the discretized trapezoid functional.
struct DiscreteFunctional {
    const EnergyProblem& p;
    int n;
    double dt;

    double energy(const std::vector<double>& g) const {
        return path_energy(p, std::span<const double>(g.data(), g.size()));
    }

    // grad[k] for interior k = 1..n-2 (endpoints fixed).
    void gradient(const std::vector<double>& g, std::vector<double>& grad) const {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            double s0 = p.t + i * dt;
            double s1 = s0 + dt;
            double v = (g[i + 1] - g[i]) / dt;
            for (int side = 0; side < 2; ++side) {
                int idx = i + side;
                double s = side == 0 ? s0 : s1;
                double sig = p.model.sigma(s, g[idx]);
                double sx = p.model.dsigma(s, g[idx]);
                double mu = p.drift.mu(p.model, s, g[idx]);
                double mup = p.drift.dmu(p.model, s, g[idx]);
                double w = v - mu;
                double dL_dg = -w * mup / (sig * sig) - w * w * sx / (sig * sig * sig);
                double dL_dv = w / (sig * sig);
                // d/dg_k of (dt/2) * L(s, g_idx, v): position term when k == idx,
                // slope term when k == i (factor -1/dt) or k == i+1 (factor +1/dt).
                if (idx > 0 && idx < n - 1)
                    grad[idx] += 0.5 * dt * dL_dg;
                if (i > 0 && i < n - 1)
                    grad[i] += 0.5 * dt * dL_dv * (-1.0 / dt);
                if (i + 1 > 0 && i + 1 < n - 1)
                    grad[i + 1] += 0.5 * dt * dL_dv * (1.0 / dt);
            }
        }
    }
};

// Gradient descent with Barzilai-Borwein steps and Armijo backtracking on a
// fixed grid; initial path supplied by the caller.
void minimize_on_grid(const EnergyProblem& p, std::vector<double>& g, int max_iter) {
    const int n = static_cast<int>(g.size());
    DiscreteFunctional F{p, n, (p.u_time - p.t) / (n - 1)};
    std::vector<double> grad(n, 0.0), prev_g, prev_grad, trial(n);
    double E = F.energy(g);
    double step = 0.1;
    const double armijo = 1e-4;
    for (int it = 0; it < max_iter; ++it) {
        F.gradient(g, grad);
        double gg = 0.0;
        for (int k = 1; k < n - 1; ++k)
            gg += grad[k] * grad[k];
        if (gg < 1e-24)
            break;
        if (!prev_g.empty()) {
            // BB1 step: <dx, dg> / <dg, dg>.
            double num = 0.0, den = 0.0;
            for (int k = 1; k < n - 1; ++k) {
                double dx = g[k] - prev_g[k];
                double dg = grad[k] - prev_grad[k];
                num += dx * dg;
                den += dg * dg;
            }
            if (den > 0.0 && num > 0.0)
                step = num / den;
        }
        step = std::clamp(step, 1e-12, 1e6);
        prev_g = g;
        prev_grad = grad;
        bool accepted = false;
        double t_step = step;
        for (int ls = 0; ls < 60; ++ls) {
            trial = g;
            for (int k = 1; k < n - 1; ++k)
                trial[k] -= t_step * grad[k];
            double Et = F.energy(trial);
            if (Et <= E - armijo * t_step * gg) {
                g = trial;
                E = Et;
                accepted = true;
                break;
            }
            t_step *= 0.5;
        }
        if (!accepted)
            break; // no admissible descent step left
    }
}

std::vector<double> refine_path(const std::vector<double>& coarse, int n_fine) {
    std::vector<double> fine(n_fine);
    int nc = static_cast<int>(coarse.size());
    for (int i = 0; i < n_fine; ++i) {
        double pos = static_cast<double>(i) * (nc - 1) / (n_fine - 1);
        int j = std::min(static_cast<int>(pos), nc - 2);
        double w = pos - j;
        fine[i] = (1.0 - w) * coarse[j] + w * coarse[j + 1];
    }
    return fine;
}

} // namespace

EnergySolution direct_minimize_energy(const EnergyProblem& p, int n_grid, int iterations) {
    p.validate();
    if (n_grid < 64)
        throw std::invalid_argument("direct_minimize_energy requires n_grid >= 64");

    // Coarse-to-fine: minimize on doubling grids starting from the straight
    // line, interpolating each solution up as the next initial guess.
    std::vector<int> levels;
    for (int n = 65; n < n_grid; n = 2 * (n - 1) + 1)
        levels.push_back(n);
    levels.push_back(n_grid);

    std::vector<double> g;
    for (std::size_t li = 0; li < levels.size(); ++li) {
        int n = levels[li];
        if (g.empty()) {
            g.resize(n);
            for (int i = 0; i < n; ++i)
                g[i] = p.x + (p.y - p.x) * i / (n - 1.0);
        } else {
            g = refine_path(g, n);
        }
        minimize_on_grid(p, g, iterations);
    }

    EnergySolution sol;
    sol.energy = path_energy(p, g);
    sol.path = std::move(g);
    sol.method = EnergyMethod::DirectMinimization;
    sol.residual = 0.0; // endpoints are hard constraints
    return sol;
}

EnergySolution solve_euler_lagrange(const EnergyProblem& p, int n_grid, int multistarts) {
    p.validate();
    if (n_grid < 64)
        throw std::invalid_argument("solve_euler_lagrange requires n_grid >= 64");

    const double res_tol = 1e-6 * std::max(1.0, std::abs(p.y - p.x));
    std::vector<double> starts = canonical_starts(p, multistarts);
    std::optional<EnergySolution> best;
    int attempted = 0;
    for (double v0 : starts) {
        ++attempted;
        auto sol = shooting_from_start(p, v0, n_grid);
        if (!sol || sol->residual > res_tol)
            continue;
        if (!best || sol->energy < best->energy)
            best = std::move(sol);
    }
    if (best) {
        best->multistart_count = attempted;
        return *best;
    }

    // Shooting failed to land on the boundary; fall back to the direct
    // minimizer and flag the method.
    EnergySolution fallback = direct_minimize_energy(p, n_grid, 4000);
    fallback.multistart_count = attempted;
    if (!std::isfinite(fallback.energy))
        throw EnergySolverError(
            "energy solve failed: no shooting bracket from " + std::to_string(attempted) +
            " starts and direct minimization returned a non-finite energy");
    return fallback;
}

NsCheckResult ns_bounds_check(const EnergyProblem& p, const NsBounds& bounds, double energy) {
    p.validate();
    if (!(bounds.lambda_cap >= 1.0) || !(bounds.Lambda_cap >= 0.0))
        throw std::invalid_argument("NsBounds requires lambda >= 1 and Lambda >= 0");
    const double dt = p.u_time - p.t;
    const double dy2 = (p.y - p.x) * (p.y - p.x);
    NsCheckResult r;
    r.lower = dy2 / (8.0 * bounds.lambda_cap * dt) - 0.25 * bounds.Lambda_cap * dt;
    r.upper = bounds.lambda_cap * dy2 / (2.0 * dt) + 0.5 * bounds.Lambda_cap * dt;
    r.lower_margin = energy - r.lower;
    r.upper_margin = r.upper - energy;
    r.inside = r.lower_margin > 0.0 && r.upper_margin > 0.0;
    return r;
}

NsBounds ns_bounds_from_model(const VolModel& model, double grid_lo, double grid_hi, int n) {
    double lambda = 1.0, Lambda = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = grid_lo + (grid_hi - grid_lo) * i / (n - 1.0);
        double sig = model.sigma(x);
        double a = 0.5 * sig * sig;
        lambda = std::max({lambda, a, 1.0 / a});
        double ap = sig * model.dsigma(x);
        double app = model.dsigma(x) * model.dsigma(x) + sig * model.d2sigma(x);
        // Symmetric split b = -bhat = -(1 + a'/a)/2: |b|_a^2 + |bhat|_a^2 =
        // (a+a')^2/(2a) and c = (a bhat)' = (a' + a'')/2.
        double drift_norm = (a + ap) * (a + ap) / (2.0 * a);
        double c = 0.5 * (ap + app);
        Lambda = std::max(Lambda, drift_norm + std::abs(c));
    }
    return {lambda, Lambda};
}

std::vector<EnergyCurveRow> energy_curve(const VolModel& model, const DriftSpec& drift, double t,
                                         double u_time, double x, std::span<const double> y_grid,
                                         const EnergyCurveOptions& opt) {
    std::vector<EnergyCurveRow> rows(y_grid.size());
    parallel_for(y_grid.size(), opt.n_threads, [&](std::size_t i) {
        EnergyCurveRow& row = rows[i];
        row.y = y_grid[i];
        try {
            EnergyProblem p{t, u_time, x, row.y, model, drift};
            EnergySolution sol = solve_euler_lagrange(p, opt.n_grid, opt.multistarts);
            double d = geodesic_distance(model, x, row.y);
            row.energy = sol.energy;
            row.half_d2 = 0.5 * d * d;
            row.method = sol.method;
            row.residual = sol.residual;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    return rows;
}

} // namespace voltail
