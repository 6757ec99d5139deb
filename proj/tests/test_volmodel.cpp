#include <doctest.h>

#include <cmath>

#include "voltail/vol_model.hpp"

using namespace voltail;

namespace {

double fig1_direct(double x) {
    return 0.5 - 0.1 * std::exp(1.0 - x * x) + 0.4 * std::exp(-2.0 * std::exp(x));
}

} // namespace

TEST_SUITE("volmodel") {

TEST_CASE("eval_sigma spot values") {
    CHECK(VolModel::constant(0.2).sigma(3.7) == 0.2);

    // Direct evaluation of the figure-1 formula at x=0.
    VolModel fig1 = VolModel::paper_figure1();
    double expected = 0.5 - 0.1 * std::exp(1.0) + 0.4 * std::exp(-2.0);
    CHECK(expected == doctest::Approx(0.2823059305).epsilon(1e-9));
    CHECK(fig1.sigma(0.0) == doctest::Approx(expected).epsilon(1e-15));

    CHECK(VolModel::cev_local(0.2, -0.5).sigma(4.0) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("cev-local domain violation") {
    VolModel cev = VolModel::cev_local(0.2, -0.5);
    CHECK_THROWS_AS(cev.sigma(0.0), std::domain_error);
    CHECK_THROWS_AS(cev.sigma(-1.0), std::domain_error);
}

TEST_CASE("drift mu values") {
    DriftSpec drift = DriftSpec::driftless_log_stock();

    VolModel c03 = VolModel::constant(0.3);
    CHECK(drift.mu(c03, 1.0) == doctest::Approx(-0.045).epsilon(1e-15));
    // Translation invariance for constant sigma.
    for (double x : {-5.0, 0.0, 2.0, 17.0})
        CHECK(drift.mu(c03, x) == doctest::Approx(-0.045).epsilon(1e-15));

    // Central-difference oracle on sigma at x=0 for the figure-1 model.
    VolModel fig1 = VolModel::paper_figure1();
    double h = 1e-5;
    double sig = fig1_direct(0.0);
    double dsig_cd = (fig1_direct(h) - fig1_direct(-h)) / (2.0 * h);
    double mu_oracle = -0.5 * sig * sig - sig * dsig_cd;
    CHECK(drift.mu(fig1, 0.0) == doctest::Approx(mu_oracle).epsilon(1e-8));
}

TEST_CASE("grid extrema stay inside the stored bounds") {
    struct Case {
        VolModel model;
        double lo, hi;
    };
    Case cases[] = {
        {VolModel::constant(0.2), -10.0, 10.0},
        {VolModel::paper_figure1(), -10.0, 10.0},
        {VolModel::cev_local(0.2, -0.5), 0.01, 100.0},
    };
    for (const auto& c : cases) {
        double mn = 1e300, mx = -1e300;
        for (int i = 0; i < 10000; ++i) {
            double x = c.lo + (c.hi - c.lo) * i / 9999.0;
            double s = c.model.sigma(x);
            mn = std::min(mn, s);
            mx = std::max(mx, s);
        }
        CHECK(mn >= c.model.sigma_lo() * (1.0 - 1e-9));
        CHECK(mx <= c.model.sigma_hi() * (1.0 + 1e-9));
    }
}

TEST_CASE("analytic derivatives agree with central differences") {
    VolModel fig1 = VolModel::paper_figure1();
    for (int i = 0; i <= 200; ++i) {
        double x = -10.0 + 20.0 * i / 200.0;
        double h = central_diff_step(x);
        double cd = (fig1.sigma(x + h) - fig1.sigma(x - h)) / (2.0 * h);
        CHECK(fig1.dsigma(x) == doctest::Approx(cd).epsilon(1e-6));
    }
    VolModel cev = VolModel::cev_local(0.3, -0.25);
    for (double x : {0.5, 1.0, 4.0, 50.0}) {
        double h = central_diff_step(x);
        double cd = (cev.sigma(x + h) - cev.sigma(x - h)) / (2.0 * h);
        CHECK(cev.dsigma(x) == doctest::Approx(cd).epsilon(1e-6));
    }
}

TEST_CASE("drift analytic vs central-difference within 1e-6 on the grid") {
    VolModel fig1 = VolModel::paper_figure1();
    DriftSpec drift = DriftSpec::driftless_log_stock();
    for (int i = 0; i <= 400; ++i) {
        double x = -10.0 + 20.0 * i / 400.0;
        double h = central_diff_step(x);
        double sig = fig1.sigma(x);
        double dsig = (fig1.sigma(x + h) - fig1.sigma(x - h)) / (2.0 * h);
        double mu_cd = -0.5 * sig * sig - sig * dsig;
        CHECK(std::abs(drift.mu(fig1, x) - mu_cd) <= 1e-6);
    }
}

TEST_CASE("expression models require confirmed bounds") {
    CHECK_THROWS_AS(VolModel::expression("0.3+0.1*exp(-x^2)", false), std::invalid_argument);
    VolModel m = VolModel::expression("0.3+0.1*exp(-x^2)", true);
    CHECK(m.derivative_mode() == DerivativeMode::CentralDifference);
    CHECK(m.sigma(0.0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(m.sigma_lo() == doctest::Approx(0.3).epsilon(1e-4));
    CHECK(m.sigma_hi() == doctest::Approx(0.4).epsilon(1e-4));
}

TEST_CASE("nonpositive volatility is rejected at construction") {
    CHECK_THROWS_AS(VolModel::expression("x", true), std::invalid_argument);
    CHECK_THROWS_AS(VolModel::constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(VolModel::constant(-1.0), std::invalid_argument);
}

TEST_CASE("figure-1 second derivative matches differences") {
    VolModel fig1 = VolModel::paper_figure1();
    for (double x : {-2.0, -0.5, 0.0, 0.7, 1.5}) {
        double h = 1e-4;
        double cd2 = (fig1.sigma(x + h) - 2.0 * fig1.sigma(x) + fig1.sigma(x - h)) / (h * h);
        CHECK(fig1.d2sigma(x) == doctest::Approx(cd2).epsilon(1e-5));
    }
}

TEST_CASE("drift spec variants") {
    VolModel m = VolModel::constant(0.5);
    CHECK(DriftSpec::zero().mu(m, 1.0) == 0.0);
    CHECK(DriftSpec::constant(0.07).mu(m, -3.0) == 0.07);
    DriftSpec e = DriftSpec::expression("0.1*x");
    CHECK(e.mu(m, 2.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(e.dmu(m, 2.0) == doctest::Approx(0.1).epsilon(1e-6));
}

} // TEST_SUITE
