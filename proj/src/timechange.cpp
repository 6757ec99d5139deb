#include "voltail/timechange.hpp"

#include <cmath>
#include <limits>

namespace voltail {

namespace {

constexpr double kBlowupCap = 1e10;
constexpr double kLambdaSearchCap = 1e12;

// State y = (B, A) with B' = lambda - kappa B + sigma^2 B^2 / 2, A' = kappa theta B.
struct RiccatiRhs {
    double lambda, kappa, half_sig2, kappa_theta;
    void operator()(const double y[2], double dy[2]) const {
        dy[0] = lambda - kappa * y[0] + half_sig2 * y[0] * y[0];
        dy[1] = kappa_theta * y[0];
    }
};

// Cash-Karp embedded RK45 with blow-up detection.
CirMgfResult integrate_riccati(const CirParams& p, double lambda, double T) {
    RiccatiRhs rhs{lambda, p.kappa, 0.5 * p.sigma_v * p.sigma_v, p.kappa * p.theta};
    const double tol = 1e-12;
    const double h_min = 1e-14 * T;

    double y[2] = {0.0, 0.0};
    double s = 0.0;
    double h = T / 64.0;
    CirMgfResult out;

    auto step = [&](const double yin[2], double hh, double yout[2]) {
        static const double a21 = 1.0 / 5.0;
        static const double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        static const double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
        static const double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0, a53 = -70.0 / 27.0,
                            a54 = 35.0 / 27.0;
        static const double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0, a63 = 575.0 / 13824.0,
                            a64 = 44275.0 / 110592.0, a65 = 253.0 / 4096.0;
        static const double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0, b4 = 125.0 / 594.0,
                            b6 = 512.0 / 1771.0;
        static const double e1 = b1 - 2825.0 / 27648.0, e3 = b3 - 18575.0 / 48384.0,
                            e4 = b4 - 13525.0 / 55296.0, e5 = -277.0 / 14336.0, e6 = b6 - 0.25;
        double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], tmp[2];
        rhs(yin, k1);
        for (int i = 0; i < 2; ++i)
            tmp[i] = yin[i] + hh * a21 * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < 2; ++i)
            tmp[i] = yin[i] + hh * (a31 * k1[i] + a32 * k2[i]);
        rhs(tmp, k3);
        for (int i = 0; i < 2; ++i)
            tmp[i] = yin[i] + hh * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(tmp, k4);
        for (int i = 0; i < 2; ++i)
            tmp[i] = yin[i] + hh * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(tmp, k5);
        for (int i = 0; i < 2; ++i)
            tmp[i] = yin[i] +
                     hh * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(tmp, k6);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            yout[i] = yin[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b6 * k6[i]);
            double ei = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
            err = std::max(err, std::abs(ei) / std::max(1.0, std::abs(yout[i])));
        }
        return err;
    };

    while (s < T) {
        if (h > T - s)
            h = T - s;
        double ynew[2];
        double err = step(y, h, ynew);
        if (err <= tol || h <= h_min) {
            s += h;
            y[0] = ynew[0];
            y[1] = ynew[1];
            if (!std::isfinite(y[0]) || std::abs(y[0]) > kBlowupCap) {
                out.exploded = true;
                out.blowup_time = s;
                return out;
            }
            if (h <= h_min && err > tol) {
                // Step-size underflow near the vertical asymptote.
                out.exploded = true;
                out.blowup_time = s;
                return out;
            }
        }
        double scale = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
        h *= std::clamp(scale, 0.2, 5.0);
        if (h < h_min)
            h = h_min;
    }
    out.log_value = y[1] + y[0] * p.v0;
    out.value = std::exp(out.log_value);
    return out;
}

} // namespace

CirMgfResult cir_mgf_integrated(const CirParams& p, double lambda, double T) {
    p.validate();
    if (!(T > 0.0))
        throw std::invalid_argument("cir_mgf_integrated requires T > 0");
    if (lambda == 0.0)
        return {false, 1.0, 0.0, 0.0};
    return integrate_riccati(p, lambda, T);
}

CriticalMoment critical_lambda(const CirParams& p, double T) {
    p.validate();
    if (!(T > 0.0))
        throw std::invalid_argument("critical_lambda requires T > 0");
    CriticalMoment cm;
    cm.T = T;

    double lo = 0.0, hi = 1.0;
    while (!cir_mgf_integrated(p, hi, T).exploded) {
        lo = hi;
        hi *= 2.0;
        if (hi > kLambdaSearchCap) {
            cm.lambda_star = std::numeric_limits<double>::infinity();
            cm.bracket_lo = lo;
            cm.bracket_hi = cm.lambda_star;
            return cm;
        }
    }
    while (hi - lo > 1e-6 * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        if (cir_mgf_integrated(p, mid, T).exploded)
            hi = mid;
        else
            lo = mid;
    }
    cm.lambda_star = 0.5 * (lo + hi);
    cm.bracket_lo = lo;
    cm.bracket_hi = hi;
    return cm;
}

MomentCorrespondence cev_moment_correspondence(const CevParams& cev, const CriticalMoment& cm) {
    cev.validate();
    if (!(cm.lambda_star > 0.0) || std::isinf(cm.lambda_star))
        throw std::invalid_argument(
            "moment correspondence applies only to lambda_star in (0, inf)");
    MomentCorrespondence mc;
    mc.lambda_star = cm.lambda_star;
    mc.cev_delta = cev.delta;
    mc.cev_beta = cev.beta;
    mc.transform = "z(S) = S^" + std::to_string(-cev.beta) + " / " +
                   std::to_string(cev.delta * std::abs(cev.beta));
    return mc;
}

double cev_tail_transform(const CevParams& cev, double s) {
    cev.validate();
    if (s < 0.0)
        throw std::domain_error("cev_tail_transform requires s >= 0");
    if (s == 0.0)
        return 0.0;
    return std::pow(s, -cev.beta) / (cev.delta * std::abs(cev.beta));
}

double digital_tail_slope(const CriticalMoment& cm) {
    if (!(cm.lambda_star > 0.0) || std::isinf(cm.lambda_star))
        throw std::invalid_argument("digital_tail_slope requires finite positive lambda_star");
    return std::sqrt(2.0 * cm.lambda_star);
}

SabrClockBounds sabr_clock_gaussian_bounds(double x, double t, double eps) {
    if (!(x > 0.0) || !(t > 0.0) || eps < 0.0)
        throw std::invalid_argument("sabr_clock_gaussian_bounds requires x,t > 0 and eps >= 0");
    double num = x * x * (1.0 + eps);
    return {std::exp(-num / ((8.0 / 3.0) * t)), std::exp(-num / (8.0 * t))};
}

} // namespace voltail
