#include <doctest.h>

#include <cmath>
#include <random>

#include "voltail/energy.hpp"
#include "voltail/geodesic.hpp"

using namespace voltail;

namespace {

EnergyProblem make_problem(VolModel model, DriftSpec drift, double t, double u, double x,
                           double y) {
    return EnergyProblem{t, u, x, y, std::move(model), std::move(drift)};
}

double constant_energy(double sigma, double mu, double dt, double x, double y) {
    double num = y - x - mu * dt;
    return num * num / (2.0 * sigma * sigma * dt);
}

} // namespace

TEST_SUITE("energy") {

TEST_CASE("lagrangian spot values") {
    VolModel c = VolModel::constant(0.3);
    EnergyProblem p = make_problem(c, DriftSpec::driftless_log_stock(), 0.0, 1.0, 0.0, 1.0);
    // Moving with the drift costs nothing.
    CHECK(lagrangian(p, 0.0, 0.0, -0.045) == doctest::Approx(0.0).epsilon(1e-15));

    EnergyProblem p0 = make_problem(c, DriftSpec::zero(), 0.0, 1.0, 0.0, 1.0);
    CHECK(lagrangian(p0, 0.5, 2.0, 0.3) == doctest::Approx(0.5).epsilon(1e-14));

    // Hand-composed value on the figure-1 model.
    VolModel fig1 = VolModel::paper_figure1();
    DriftSpec drift = DriftSpec::driftless_log_stock();
    EnergyProblem pf = make_problem(fig1, drift, 0.0, 1.0, 0.0, 2.0);
    double sig = fig1.sigma(0.0);
    double mu = drift.mu(fig1, 0.0);
    double expected = (1.0 - mu) * (1.0 - mu) / (2.0 * sig * sig);
    CHECK(lagrangian(pf, 0.0, 0.0, 1.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("constant coefficients: shooting hits the closed form") {
    VolModel c = VolModel::constant(0.3);
    EnergyProblem p = make_problem(c, DriftSpec::driftless_log_stock(), 0.0, 1.0, 0.0, 1.0);
    EnergySolution sol = solve_euler_lagrange(p, 257, 6);
    double expected = constant_energy(0.3, -0.045, 1.0, 0.0, 1.0);
    CHECK(expected == doctest::Approx(6.066806).epsilon(1e-6));
    CHECK(sol.energy == doctest::Approx(expected).epsilon(1e-8));
    CHECK(sol.method == EnergyMethod::Shooting);
    CHECK(sol.path.front() == 0.0);
    CHECK(sol.residual <= 1e-6);

    // The optimal path is the straight line.
    for (std::size_t i = 0; i < sol.path.size(); ++i) {
        double s = static_cast<double>(i) / (sol.path.size() - 1);
        CHECK(std::abs(sol.path[i] - s) <= 1e-9);
    }

    EnergySolution direct = direct_minimize_energy(p, 257, 2000);
    CHECK(direct.energy == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("drifted line costs nothing") {
    VolModel c = VolModel::constant(0.4);
    DriftSpec drift = DriftSpec::driftless_log_stock();
    double mu = drift.mu(c, 0.0); // -0.08
    EnergyProblem p = make_problem(c, drift, 0.0, 2.0, 0.5, 0.5 + mu * 2.0);
    EnergySolution sol = solve_euler_lagrange(p, 129, 6);
    CHECK(sol.energy <= 1e-12);
}

TEST_CASE("mu = 0 reduction to the squared geodesic distance") {
    VolModel fig1 = VolModel::paper_figure1();
    EnergyProblem p = make_problem(fig1, DriftSpec::zero(), 0.0, 1.0, 0.0, 2.0);
    EnergySolution sol = solve_euler_lagrange(p, 513, 6);
    double d = geodesic_distance(fig1, 0.0, 2.0);
    CHECK(sol.energy == doctest::Approx(0.5 * d * d).epsilon(1e-4));
}

TEST_CASE("direct minimizer leaves an optimal straight line alone") {
    VolModel c = VolModel::constant(0.25);
    EnergyProblem p = make_problem(c, DriftSpec::zero(), 0.0, 1.0, -1.0, 1.0);
    EnergySolution sol = direct_minimize_energy(p, 129, 500);
    for (std::size_t i = 0; i < sol.path.size(); ++i) {
        double s = static_cast<double>(i) / (sol.path.size() - 1);
        CHECK(std::abs(sol.path[i] - (-1.0 + 2.0 * s)) <= 1e-10);
    }
    CHECK(sol.energy == doctest::Approx(constant_energy(0.25, 0.0, 1.0, -1.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("grid refinement changes figure-2 energies by <= 1e-4 relative") {
    VolModel fig1 = VolModel::paper_figure1();
    DriftSpec drift = DriftSpec::driftless_log_stock();
    for (double y : {-2.0, 1.0, 2.5}) {
        EnergyProblem p = make_problem(fig1, drift, 0.0, 1.0, 0.0, y);
        double e128 = solve_euler_lagrange(p, 129, 6).energy;
        double e512 = solve_euler_lagrange(p, 513, 6).energy;
        CHECK(std::abs(e128 - e512) <= 1e-4 * std::max(1.0, std::abs(e512)));
    }
}

TEST_CASE("cross-solver agreement on a 20-instance random suite") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> us(0.15, 0.8), ux(-1.5, 1.5), udt(0.5, 2.0);
    VolModel fig1 = VolModel::paper_figure1();
    for (int i = 0; i < 20; ++i) {
        VolModel model = (i % 3 == 0) ? fig1 : VolModel::constant(us(gen));
        DriftSpec drift = (i % 2 == 0) ? DriftSpec::zero() : DriftSpec::driftless_log_stock();
        double x = ux(gen), y = ux(gen), dt = udt(gen);
        EnergyProblem p = make_problem(model, drift, 0.0, dt, x, y);
        double es = solve_euler_lagrange(p, 257, 6).energy;
        double ed = direct_minimize_energy(p, 257, 2000).energy;
        CHECK(std::abs(es - ed) <= 1e-4 * std::max(1.0, es));
    }
}

TEST_CASE("constant-coefficient exactness across random instances") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> us(0.1, 1.2), ux(-2.0, 2.0), udt(0.25, 3.0);
    for (int i = 0; i < 20; ++i) {
        double sigma = us(gen), x = ux(gen), y = ux(gen), dt = udt(gen);
        VolModel m = VolModel::constant(sigma);
        DriftSpec drift = (i % 2 == 0) ? DriftSpec::driftless_log_stock() : DriftSpec::zero();
        double mu = drift.mu(m, 0.0);
        EnergyProblem p = make_problem(m, drift, 0.0, dt, x, y);
        EnergySolution sol = solve_euler_lagrange(p, 129, 6);
        double expected = constant_energy(sigma, mu, dt, x, y);
        CHECK(std::abs(sol.energy - expected) <= 1e-8 * std::max(1.0, expected));
    }
}

TEST_CASE("energy is nonnegative and below the straight-line energy") {
    VolModel fig1 = VolModel::paper_figure1();
    DriftSpec drift = DriftSpec::driftless_log_stock();
    for (double y : {-2.5, -1.0, 0.5, 1.5, 3.0}) {
        EnergyProblem p = make_problem(fig1, drift, 0.0, 1.0, 0.0, y);
        EnergySolution sol = solve_euler_lagrange(p, 257, 6);
        CHECK(sol.energy >= 0.0);

        std::vector<double> line(257);
        for (int i = 0; i < 257; ++i)
            line[i] = 0.0 + y * i / 256.0;
        CHECK(sol.energy <= path_energy(p, line) + 1e-10);
    }
}

TEST_CASE("time-dependent sigma(t,x) = s0 sqrt(1+t) has a closed-form energy") {
    // With mu = 0 and space-constant sigma(t), the optimal speed is
    // proportional to sigma^2(t) and E = (y-x)^2 / (2 int sigma^2).
    double s0 = 0.3;
    VolModel m = VolModel::custom(
        [s0](double t, double) { return s0 * std::sqrt(1.0 + t); },
        [](double, double) { return 0.0; }, [](double, double) { return 0.0; }, s0,
        s0 * std::sqrt(3.0));
    double x = 0.0, y = 1.2;
    EnergyProblem p = make_problem(m, DriftSpec::zero(), 0.0, 1.0, x, y);
    double integral_s2 = s0 * s0 * 1.5; // int_0^1 s0^2 (1+t) dt
    double expected = (y - x) * (y - x) / (2.0 * integral_s2);
    EnergySolution sh = solve_euler_lagrange(p, 513, 6);
    EnergySolution dm = direct_minimize_energy(p, 513, 4000);
    CHECK(sh.energy == doctest::Approx(expected).epsilon(1e-4));
    CHECK(dm.energy == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("ns bounds check") {
    VolModel m = VolModel::constant(std::sqrt(2.0)); // a = 1, lambda = 1
    EnergyProblem p = make_problem(m, DriftSpec::zero(), 0.0, 1.0, 0.0, 1.0);
    EnergySolution sol = solve_euler_lagrange(p, 129, 6);
    CHECK(sol.energy == doctest::Approx(0.25).epsilon(1e-10));

    NsCheckResult r = ns_bounds_check(p, {1.0, 0.0}, sol.energy);
    CHECK(r.inside);
    CHECK(r.lower == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(r.upper == doctest::Approx(0.5).epsilon(1e-12));

    // Zero energy with distinct endpoints violates the positive lower bound.
    NsCheckResult bad = ns_bounds_check(p, {1.0, 0.0}, 0.0);
    CHECK_FALSE(bad.inside);
}

TEST_CASE("figure-2 energies sit inside the coefficient bounds") {
    VolModel fig1 = VolModel::paper_figure1();
    DriftSpec drift = DriftSpec::driftless_log_stock();
    NsBounds bounds = ns_bounds_from_model(fig1);
    CHECK(bounds.lambda_cap >= 1.0);
    CHECK(bounds.Lambda_cap > 0.0);
    for (double y : {-3.0, -1.0, 0.0, 1.0, 2.0, 3.0}) {
        EnergyProblem p = make_problem(fig1, drift, 0.0, 1.0, 0.0, y);
        EnergySolution sol = solve_euler_lagrange(p, 257, 6);
        CHECK(ns_bounds_check(p, bounds, sol.energy).inside);
    }
}

TEST_CASE("energy curve basics") {
    VolModel c = VolModel::constant(0.5);
    DriftSpec drift = DriftSpec::zero();
    std::vector<double> ys{-1.0, -0.5, 0.0, 0.5, 1.0};
    auto rows = energy_curve(c, drift, 0.0, 1.0, 0.0, ys, {129, 6, 1});
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].ok);
        CHECK(rows[i].y == ys[i]); // deterministic order
        double expected = constant_energy(0.5, 0.0, 1.0, 0.0, ys[i]);
        CHECK(rows[i].energy == doctest::Approx(expected).epsilon(1e-8));
        double d = ys[i] / 0.5;
        CHECK(rows[i].half_d2 == doctest::Approx(0.5 * d * d).epsilon(1e-9));
    }
    // Coincident endpoints with mu = 0: zero energy, zero distance.
    CHECK(rows[2].energy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rows[2].half_d2 == 0.0);
}

TEST_CASE("figure-2 curve is finite and grows in the wings") {
    VolModel fig1 = VolModel::paper_figure1();
    DriftSpec drift = DriftSpec::driftless_log_stock();
    std::vector<double> ys;
    for (double y = -3.0; y <= 3.0 + 1e-12; y += 0.5)
        ys.push_back(y);
    auto rows = energy_curve(fig1, drift, 0.0, 1.0, 0.0, ys, {257, 6, 0});
    for (const auto& r : rows) {
        CHECK(r.ok);
        CHECK(std::isfinite(r.energy));
        CHECK(std::isfinite(r.half_d2));
    }
    // Both columns increase with |y| in the wings (y > 1 and y < -1).
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].y >= 1.0) {
            CHECK(rows[i].energy > rows[i - 1].energy);
            CHECK(rows[i].half_d2 > rows[i - 1].half_d2);
        }
        if (rows[i].y <= -1.0) {
            CHECK(rows[i - 1].energy > rows[i].energy);
            CHECK(rows[i - 1].half_d2 > rows[i].half_d2);
        }
    }
}

TEST_CASE("solution invariants") {
    VolModel fig1 = VolModel::paper_figure1();
    EnergyProblem p = make_problem(fig1, DriftSpec::driftless_log_stock(), 0.0, 1.0, 0.0, 2.0);
    EnergySolution sol = solve_euler_lagrange(p, 257, 6);
    CHECK(sol.path.size() == 257);
    CHECK(sol.path.front() == 0.0);
    CHECK(std::abs(sol.path.back() - 2.0) <= sol.residual + 1e-15);
    CHECK(sol.residual <= 1e-6 * std::max(1.0, 2.0));
    CHECK(sol.multistart_count >= 1);
    CHECK(sol.multistart_count <= 6);
}

TEST_CASE("argument validation") {
    VolModel c = VolModel::constant(0.3);
    EnergyProblem bad = make_problem(c, DriftSpec::zero(), 1.0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(solve_euler_lagrange(bad, 129, 6), std::invalid_argument);
    EnergyProblem ok = make_problem(c, DriftSpec::zero(), 0.0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(solve_euler_lagrange(ok, 32, 6), std::invalid_argument);
    CHECK_THROWS_AS(direct_minimize_energy(ok, 16, 100), std::invalid_argument);
    CHECK_THROWS_AS(ns_bounds_check(ok, {0.5, 0.0}, 1.0), std::invalid_argument);
}

} // TEST_SUITE
