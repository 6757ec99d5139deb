#include <doctest.h>

#include <cmath>

#include "voltail/expr.hpp"

using voltail::Expr;
using voltail::ExprError;

TEST_SUITE("expr") {

TEST_CASE("literals, variable and constants") {
    CHECK(Expr::parse("2").eval(0.0) == 2.0);
    CHECK(Expr::parse("x").eval(3.5) == 3.5);
    CHECK(Expr::parse("e").eval(0.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(Expr::parse("0.25").eval(0.0) == 0.25);
}

TEST_CASE("precedence and associativity") {
    CHECK(Expr::parse("2+3*4").eval(0.0) == 14.0);
    CHECK(Expr::parse("2+3*4^2").eval(0.0) == 50.0);
    CHECK(Expr::parse("2^3^2").eval(0.0) == 512.0); // right associative
    CHECK(Expr::parse("-x^2").eval(3.0) == -9.0);
    CHECK(Expr::parse("(2+3)*4").eval(0.0) == 20.0);
    CHECK(Expr::parse("1-2-3").eval(0.0) == -4.0);
    CHECK(Expr::parse("12/4/3").eval(0.0) == 1.0);
}

TEST_CASE("exp and e powers agree") {
    Expr a = Expr::parse("exp(1-x^2)");
    Expr b = Expr::parse("e^(1-x^2)");
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0})
        CHECK(a.eval(x) == doctest::Approx(b.eval(x)).epsilon(1e-14));
}

TEST_CASE("figure-1 volatility expression matches the direct formula") {
    Expr sig = Expr::parse("0.5-0.1*exp(1-x^2)+0.4*exp(-2*exp(x))");
    for (double x : {-3.0, -1.0, 0.0, 0.2, 1.0, 2.5}) {
        double direct = 0.5 - 0.1 * std::exp(1.0 - x * x) + 0.4 * std::exp(-2.0 * std::exp(x));
        CHECK(sig.eval(x) == doctest::Approx(direct).epsilon(1e-15));
    }
}

TEST_CASE("parse errors carry a column") {
    CHECK_THROWS_AS(Expr::parse("2*"), ExprError);
    CHECK_THROWS_AS(Expr::parse("exp(1"), ExprError);
    CHECK_THROWS_AS(Expr::parse("y+1"), ExprError);
    CHECK_THROWS_AS(Expr::parse("1..2"), ExprError);
    try {
        Expr::parse("1+*2");
    } catch (const ExprError& e) {
        CHECK(e.column() == 3);
    }
}

} // TEST_SUITE
