// Tiny arithmetic expression parser/evaluator for volatility and payoff
// formulas supplied on the command line or in config files.
//
// Grammar (ASCII):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := ('+'|'-')* power
//   power   := primary ('^' factor)?          (right associative)
//   primary := number | 'x' | 'e' | 'exp' '(' expr ')' | '(' expr ')'
//
// Numbers are plain decimal literals (no exponent suffix; 'e' always means
// Euler's constant).

#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace voltail {

class ExprError : public std::runtime_error {
public:
    ExprError(const std::string& what, std::size_t column)
        : std::runtime_error(what), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

class Expr {
public:
    struct Node;

    // Parses `text`; throws ExprError with a 1-based column on bad input.
    static Expr parse(const std::string& text);

    double eval(double x) const;
    const std::string& text() const { return text_; }

private:
    Expr(std::shared_ptr<const Node> root, std::string text);

    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace voltail
