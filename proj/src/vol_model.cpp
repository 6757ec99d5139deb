#include "voltail/vol_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace voltail {

double central_diff_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

struct VolModel::Impl {
    VolKind kind;
    DerivativeMode mode = DerivativeMode::Analytic;
    double sigma0 = 0.0;       // Constant
    double delta = 0.0;        // CevLocal
    double beta = 0.0;         // CevLocal
    std::shared_ptr<const Expr> expr; // Expression
    std::function<double(double, double)> fn, dfn, d2fn; // Custom
    double lo = 0.0, hi = 0.0;
    bool bounded = true;
    bool time_dep = false;

    double value(double t, double x) const {
        switch (kind) {
        case VolKind::Constant:
            return sigma0;
        case VolKind::PaperFigure1:
            return 0.5 - 0.1 * std::exp(1.0 - x * x) + 0.4 * std::exp(-2.0 * std::exp(x));
        case VolKind::CevLocal:
            if (x <= 0.0)
                throw std::domain_error("cev-local volatility requires x > 0");
            return delta * std::pow(x, 1.0 + beta);
        case VolKind::Expression:
            return expr->eval(x);
        case VolKind::Custom:
            return fn(t, x);
        }
        return 0.0; // unreachable
    }

    double derivative(double t, double x) const {
        switch (kind) {
        case VolKind::Constant:
            return 0.0;
        case VolKind::PaperFigure1:
            return 0.2 * x * std::exp(1.0 - x * x) - 0.8 * std::exp(x - 2.0 * std::exp(x));
        case VolKind::CevLocal:
            if (x <= 0.0)
                throw std::domain_error("cev-local volatility requires x > 0");
            return delta * (1.0 + beta) * std::pow(x, beta);
        case VolKind::Expression: {
            double h = central_diff_step(x);
            return (expr->eval(x + h) - expr->eval(x - h)) / (2.0 * h);
        }
        case VolKind::Custom:
            return dfn(t, x);
        }
        return 0.0;
    }

    double second_derivative(double t, double x) const {
        switch (kind) {
        case VolKind::Constant:
            return 0.0;
        case VolKind::PaperFigure1:
            return 0.2 * (1.0 - 2.0 * x * x) * std::exp(1.0 - x * x) -
                   0.8 * (1.0 - 2.0 * std::exp(x)) * std::exp(x - 2.0 * std::exp(x));
        case VolKind::CevLocal:
            if (x <= 0.0)
                throw std::domain_error("cev-local volatility requires x > 0");
            return delta * (1.0 + beta) * beta * std::pow(x, beta - 1.0);
        case VolKind::Expression: {
            double h = std::sqrt(central_diff_step(x)) * 1e-1; // h ~ 3e-4 scale for f''
            return (expr->eval(x + h) - 2.0 * expr->eval(x) + expr->eval(x - h)) / (h * h);
        }
        case VolKind::Custom:
            return d2fn(t, x);
        }
        return 0.0;
    }
};

namespace {

// Dense construction-time sampling; also validates positivity.
std::pair<double, double> grid_extrema(const VolModel::Impl& impl, double a, double b, int n) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double arg_lo = a;
    for (int i = 0; i < n; ++i) {
        double x = a + (b - a) * i / (n - 1.0);
        double s = impl.value(0.0, x);
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("volatility is not strictly positive at x=" +
                                        std::to_string(x));
        if (s < lo) {
            lo = s;
            arg_lo = x;
        }
        hi = std::max(hi, s);
    }
    // Refine the minimum locally (golden-section) so the stored lower bound
    // is a true lower bound for the sampled grid.
    double h = (b - a) / (n - 1.0);
    double xa = arg_lo - h, xb = arg_lo + h;
    if (impl.kind == VolKind::CevLocal)
        xa = std::max(xa, h * 1e-3);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = xb - phi * (xb - xa), x2 = xa + phi * (xb - xa);
    double f1 = impl.value(0.0, x1), f2 = impl.value(0.0, x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            xb = x2;
            x2 = x1;
            f2 = f1;
            x1 = xb - phi * (xb - xa);
            f1 = impl.value(0.0, x1);
        } else {
            xa = x1;
            x1 = x2;
            f1 = f2;
            x2 = xa + phi * (xb - xa);
            f2 = impl.value(0.0, x2);
        }
    }
    lo = std::min(lo, std::min(f1, f2));
    return {lo, hi};
}

} // namespace

VolModel VolModel::constant(double sigma0) {
    if (!(sigma0 > 0.0))
        throw std::invalid_argument("constant volatility must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = VolKind::Constant;
    impl->sigma0 = sigma0;
    impl->lo = impl->hi = sigma0;
    return VolModel(impl);
}

VolModel VolModel::paper_figure1() {
    auto impl = std::make_shared<Impl>();
    impl->kind = VolKind::PaperFigure1;
    auto [lo, hi] = grid_extrema(*impl, -10.0, 10.0, 10000);
    impl->lo = lo;
    impl->hi = std::max(hi, 0.9); // sup over the whole line, approached as x -> -inf
    return VolModel(impl);
}

VolModel VolModel::cev_local(double delta, double beta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("cev-local delta must be positive");
    if (!(beta < 0.0))
        throw std::invalid_argument("cev-local beta must be negative");
    auto impl = std::make_shared<Impl>();
    impl->kind = VolKind::CevLocal;
    impl->delta = delta;
    impl->beta = beta;
    impl->bounded = false;
    auto [lo, hi] = grid_extrema(*impl, 0.01, 100.0, 10000);
    impl->lo = lo;
    impl->hi = hi;
    return VolModel(impl);
}

VolModel VolModel::expression(const std::string& text, bool confirm_bounds) {
    if (!confirm_bounds)
        throw std::invalid_argument(
            "expression volatility bounds are estimated by grid sampling over [-10,10]; "
            "they must be confirmed explicitly (pass confirm_bounds / --confirm-bounds)");
    auto impl = std::make_shared<Impl>();
    impl->kind = VolKind::Expression;
    impl->mode = DerivativeMode::CentralDifference;
    impl->expr = std::make_shared<const Expr>(Expr::parse(text));
    auto [lo, hi] = grid_extrema(*impl, -10.0, 10.0, 10000);
    impl->lo = lo;
    impl->hi = hi;
    return VolModel(impl);
}

VolModel VolModel::custom(std::function<double(double, double)> sigma,
                          std::function<double(double, double)> dsigma_dx,
                          std::function<double(double, double)> d2sigma_dx2, double sigma_lo,
                          double sigma_hi) {
    if (!(sigma_lo > 0.0) || !(sigma_hi >= sigma_lo))
        throw std::invalid_argument("custom model requires 0 < sigma_lo <= sigma_hi");
    auto impl = std::make_shared<Impl>();
    impl->kind = VolKind::Custom;
    impl->fn = std::move(sigma);
    impl->dfn = std::move(dsigma_dx);
    impl->d2fn = std::move(d2sigma_dx2);
    impl->lo = sigma_lo;
    impl->hi = sigma_hi;
    impl->time_dep = true;
    return VolModel(impl);
}

double VolModel::sigma(double t, double x) const { return impl_->value(t, x); }
double VolModel::dsigma(double t, double x) const { return impl_->derivative(t, x); }
double VolModel::d2sigma(double t, double x) const { return impl_->second_derivative(t, x); }
double VolModel::sigma_lo() const { return impl_->lo; }
double VolModel::sigma_hi() const { return impl_->hi; }
VolKind VolModel::kind() const { return impl_->kind; }
DerivativeMode VolModel::derivative_mode() const { return impl_->mode; }
bool VolModel::bounded() const { return impl_->bounded; }
bool VolModel::time_dependent() const { return impl_->time_dep; }

double VolModel::param(const std::string& name) const {
    if (name == "sigma0" && impl_->kind == VolKind::Constant)
        return impl_->sigma0;
    if (name == "delta" && impl_->kind == VolKind::CevLocal)
        return impl_->delta;
    if (name == "beta" && impl_->kind == VolKind::CevLocal)
        return impl_->beta;
    throw std::invalid_argument("model has no parameter '" + name + "'");
}

std::string VolModel::describe() const {
    std::ostringstream os;
    switch (impl_->kind) {
    case VolKind::Constant: os << "constant:" << impl_->sigma0; break;
    case VolKind::PaperFigure1: os << "fig1"; break;
    case VolKind::CevLocal: os << "cev:" << impl_->delta << "," << impl_->beta; break;
    case VolKind::Expression: os << "expr:" << impl_->expr->text(); break;
    case VolKind::Custom: os << "custom"; break;
    }
    return os.str();
}

DriftSpec DriftSpec::driftless_log_stock() { return DriftSpec(Kind::DriftlessLogStock, 0.0, nullptr); }
DriftSpec DriftSpec::zero() { return DriftSpec(Kind::Zero, 0.0, nullptr); }
DriftSpec DriftSpec::constant(double c) { return DriftSpec(Kind::Constant, c, nullptr); }
DriftSpec DriftSpec::expression(const std::string& text) {
    return DriftSpec(Kind::Expression, 0.0, std::make_shared<const Expr>(Expr::parse(text)));
}

double DriftSpec::mu(const VolModel& m, double t, double x) const {
    switch (kind_) {
    case Kind::DriftlessLogStock: {
        double s = m.sigma(t, x);
        return -0.5 * s * s - s * m.dsigma(t, x);
    }
    case Kind::Zero: return 0.0;
    case Kind::Constant: return const_;
    case Kind::Expression: return expr_->eval(x);
    }
    return 0.0;
}

double DriftSpec::dmu(const VolModel& m, double t, double x) const {
    switch (kind_) {
    case Kind::DriftlessLogStock: {
        double s = m.sigma(t, x);
        double s1 = m.dsigma(t, x);
        double s2 = m.d2sigma(t, x);
        return -s * s1 - (s1 * s1 + s * s2);
    }
    case Kind::Zero:
    case Kind::Constant:
        return 0.0;
    case Kind::Expression: {
        double h = central_diff_step(x);
        return (expr_->eval(x + h) - expr_->eval(x - h)) / (2.0 * h);
    }
    }
    return 0.0;
}

std::string DriftSpec::describe() const {
    switch (kind_) {
    case Kind::DriftlessLogStock: return "log-stock";
    case Kind::Zero: return "zero";
    case Kind::Constant: return "const:" + std::to_string(const_);
    case Kind::Expression: return "expr:" + expr_->text();
    }
    return "";
}

} // namespace voltail
