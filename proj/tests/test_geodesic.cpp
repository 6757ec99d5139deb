#include <doctest.h>

#include <cmath>
#include <random>

#include "test_oracles.hpp"
#include "voltail/geodesic.hpp"
#include "voltail/special.hpp"

using namespace voltail;

TEST_SUITE("geodesic") {

TEST_CASE("constant sigma distances are linear") {
    VolModel m = VolModel::constant(0.2);
    CHECK(geodesic_distance(m, 0.0, 1.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(geodesic_distance(m, 1.0, 1.0) == 0.0);
    CHECK(geodesic_distance(m, 2.0, -1.0) == doctest::Approx(-15.0).epsilon(1e-12));
}

TEST_CASE("figure-1 distance matches a fixed-grid Simpson oracle") {
    VolModel m = VolModel::paper_figure1();
    auto inv_sigma = [&](double z) { return 1.0 / m.sigma(z); };
    double oracle = oracles::simpson(inv_sigma, 0.0, 2.0, 1000000);
    CHECK(geodesic_distance(m, 0.0, 2.0) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("antisymmetry and additivity") {
    VolModel m = VolModel::paper_figure1();
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 25; ++i) {
        double a = u(gen), b = u(gen), c = u(gen);
        CHECK(std::abs(geodesic_distance(m, a, b) + geodesic_distance(m, b, a)) <= 2e-10);
        CHECK(std::abs(geodesic_distance(m, a, c) - geodesic_distance(m, a, b) -
                       geodesic_distance(m, b, c)) <= 2e-10);
    }
}

TEST_CASE("monotone bounds from the sigma range") {
    VolModel m = VolModel::paper_figure1();
    for (double u = 0.5; u <= 5.0; u += 0.5) {
        double d = geodesic_distance(m, 0.0, u);
        CHECK(d >= u / m.sigma_hi() - 1e-12);
        CHECK(d <= u / m.sigma_lo() + 1e-12);
    }
}

TEST_CASE("inverse geodesic") {
    VolModel c = VolModel::constant(0.2);
    CHECK(inverse_geodesic(c, 0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-10));

    VolModel m = VolModel::paper_figure1();
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        double y = u(gen), target = u(gen);
        double x = geodesic_distance(m, y, target);
        CHECK(inverse_geodesic(m, y, x) == doctest::Approx(target).epsilon(1e-8));
    }

    double d02 = geodesic_distance(m, 0.0, 2.0);
    CHECK(inverse_geodesic(m, 0.0, d02) == doctest::Approx(2.0).epsilon(1e-7));

    // Monotone increasing in x.
    double prev = inverse_geodesic(m, 0.0, -3.0);
    for (double x = -2.5; x <= 3.0; x += 0.5) {
        double cur = inverse_geodesic(m, 0.0, x);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("doss tail asymptote") {
    VolModel c = VolModel::constant(0.2);
    CHECK(doss_tail_asymptote(c, 0.0, 1.0, 1.0) == doctest::Approx(12.5).epsilon(1e-12));

    // Constant sigma: equals the exact Gaussian rate (x-x0)^2 / (2 sigma^2 t).
    for (double x : {0.5, 1.0, 2.0})
        CHECK(doss_tail_asymptote(c, 0.0, x, 2.0) ==
              doctest::Approx(x * x / (2.0 * 0.04 * 2.0)).epsilon(1e-12));

    VolModel m = VolModel::paper_figure1();
    double d = oracles::simpson([&](double z) { return 1.0 / m.sigma(z); }, 0.0, 3.0, 200000);
    CHECK(doss_tail_asymptote(m, 0.0, 3.0, 1.0) == doctest::Approx(0.5 * d * d).epsilon(1e-8));
}

TEST_CASE("sandwich with degenerate drift band") {
    VolModel m = VolModel::paper_figure1();
    DossBounds zero{0.0, 0.0};
    for (double x : {1.0, 2.0}) {
        SandwichTail st = doss_sandwich_tail(m, zero, 0.0, x, 1.0);
        double d = geodesic_distance(m, 0.0, x);
        CHECK(st.lower == doctest::Approx(norm_tail(d)).epsilon(1e-12));
        CHECK(st.upper == doctest::Approx(norm_tail(d)).epsilon(1e-12));
    }
}

TEST_CASE("sandwich brackets the exact lognormal tail for constant sigma") {
    double s0 = 0.3;
    VolModel m = VolModel::constant(s0);
    DossBounds b{-0.5 * s0 * s0, -0.5 * s0 * s0};
    for (double t : {0.5, 1.0, 2.0}) {
        for (double x = 0.2; x <= 2.0; x += 0.3) {
            double exact = norm_tail((x + 0.5 * s0 * s0 * t) / (s0 * std::sqrt(t)));
            SandwichTail st = doss_sandwich_tail(m, b, 0.0, x, t);
            CHECK(st.lower <= exact * (1.0 + 1e-12));
            CHECK(st.upper >= exact * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("-log(upper) approaches the asymptote from below as x grows") {
    VolModel m = VolModel::constant(1.0);
    DossBounds b{-1.0, -1.0};
    double prev_ratio = 0.0;
    for (double x : {5.0, 10.0, 20.0}) {
        SandwichTail st = doss_sandwich_tail(m, b, 0.0, x, 1.0);
        double ratio = -std::log(st.upper) / doss_tail_asymptote(m, 0.0, x, 1.0);
        CHECK(ratio > prev_ratio); // monotone toward 1
        CHECK(ratio < 1.02);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio > 0.9);
}

TEST_CASE("sandwich consistency: lower <= upper, both in (0,1)") {
    VolModel m = VolModel::paper_figure1();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> uc(-1.0, 0.5), ux(0.1, 4.0), ut(0.1, 3.0);
    for (int i = 0; i < 50; ++i) {
        double c1 = uc(gen), c2 = uc(gen);
        if (c1 > c2)
            std::swap(c1, c2);
        double x = ux(gen), t = ut(gen);
        SandwichTail st = doss_sandwich_tail(m, {c1, c2}, 0.0, x, t);
        CHECK(st.lower <= st.upper);
        CHECK(st.lower > 0.0);
        CHECK(st.upper < 1.0);
    }
}

} // TEST_SUITE
