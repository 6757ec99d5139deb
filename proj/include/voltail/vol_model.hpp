// One-dimensional volatility specifications: sigma(x) (optionally sigma(t,x)),
// its first two derivatives, positive lower/upper bounds, and the
// divergence-form drift mu(x) = -sigma^2/2 - sigma*sigma' of a driftless
// log stock.

#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "voltail/expr.hpp"

namespace voltail {

enum class VolKind { Constant, PaperFigure1, CevLocal, Expression, Custom };
enum class DerivativeMode { Analytic, CentralDifference };

class VolModel {
public:
    static VolModel constant(double sigma0);

    // sigma(x) = 1/2 - 0.1 e^{1-x^2} + 0.4 e^{-2 e^x}
    static VolModel paper_figure1();

    // sigma(x) = delta * x^{1+beta} on x > 0 (beta < 0).  Unbounded globally;
    // the stored bounds are the extrema over the canonical (0,100] grid.
    static VolModel cev_local(double delta, double beta);

    // sigma(x) from an expression over {x, e, exp, +, -, *, /, ^, ()}.
    // Bounds are estimated by grid sampling over [-10,10]; the caller must
    // acknowledge that estimate by passing confirm_bounds = true.
    static VolModel expression(const std::string& expr, bool confirm_bounds);

    // Arbitrary (possibly time-dependent) model for library/test use.
    static VolModel custom(std::function<double(double, double)> sigma,
                           std::function<double(double, double)> dsigma_dx,
                           std::function<double(double, double)> d2sigma_dx2, double sigma_lo,
                           double sigma_hi);

    double sigma(double x) const { return sigma(0.0, x); }
    double sigma(double t, double x) const;
    double dsigma(double x) const { return dsigma(0.0, x); }
    double dsigma(double t, double x) const;
    double d2sigma(double x) const { return d2sigma(0.0, x); }
    double d2sigma(double t, double x) const;

    double sigma_lo() const;
    double sigma_hi() const;
    VolKind kind() const;
    DerivativeMode derivative_mode() const;
    bool bounded() const; // false for cev-local (power law is global unbounded)
    bool time_dependent() const;

    // Model parameters where applicable (constant sigma0, CEV delta/beta).
    double param(const std::string& name) const;

    std::string describe() const;

    struct Impl;

private:
    explicit VolModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Central-difference step h = 1e-5 * max(1, |x|).
double central_diff_step(double x);

// Drift specification for the energy functional.
class DriftSpec {
public:
    enum class Kind { DriftlessLogStock, Zero, Constant, Expression };

    static DriftSpec driftless_log_stock();
    static DriftSpec zero();
    static DriftSpec constant(double c);
    static DriftSpec expression(const std::string& expr);

    // mu(x); for driftless-log-stock this is -sigma^2/2 - sigma*sigma'.
    double mu(const VolModel& m, double x) const { return mu(m, 0.0, x); }
    double mu(const VolModel& m, double t, double x) const;
    double dmu(const VolModel& m, double x) const { return dmu(m, 0.0, x); }
    double dmu(const VolModel& m, double t, double x) const;

    Kind kind() const { return kind_; }
    std::string describe() const;

private:
    DriftSpec(Kind k, double c, std::shared_ptr<const Expr> e)
        : kind_(k), const_(c), expr_(std::move(e)) {}
    Kind kind_;
    double const_ = 0.0;
    std::shared_ptr<const Expr> expr_;
};

} // namespace voltail
