#include "voltail/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace voltail {

struct Expr::Node {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp };
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double v = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = v;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError(msg, pos_ + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make(Node::Op::Add, lhs, term());
            else if (accept('-'))
                lhs = make(Node::Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = make(Node::Op::Mul, lhs, factor());
            else if (accept('/'))
                lhs = make(Node::Op::Div, lhs, factor());
            else
                return lhs;
        }
    }

    NodePtr factor() {
        if (accept('-'))
            return make(Node::Op::Neg, factor());
        if (accept('+'))
            return factor();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^'))
            return make(Node::Op::Pow, base, factor());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return identifier();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        fail("unexpected character");
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        try {
            std::size_t used = 0;
            double v = std::stod(s_.substr(start, pos_ - start), &used);
            if (used != pos_ - start)
                throw std::invalid_argument("partial");
            return make(Node::Op::Const, nullptr, nullptr, v);
        } catch (const std::exception&) {
            pos_ = start;
            fail("bad numeric literal");
        }
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "x")
            return make(Node::Op::Var);
        if (name == "e")
            return make(Node::Op::Const, nullptr, nullptr, std::exp(1.0));
        if (name == "exp") {
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make(Node::Op::Exp, arg);
        }
        pos_ = start;
        fail("unknown identifier '" + name + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, double x) {
    switch (n.op) {
    case Node::Op::Const: return n.value;
    case Node::Op::Var: return x;
    case Node::Op::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case Node::Op::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case Node::Op::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case Node::Op::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case Node::Op::Pow: return std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    case Node::Op::Neg: return -eval_node(*n.lhs, x);
    case Node::Op::Exp: return std::exp(eval_node(*n.lhs, x));
    }
    return 0.0; // unreachable
}

} // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    return Expr(p.run(), text);
}

double Expr::eval(double x) const { return eval_node(*root_, x); }

} // namespace voltail
