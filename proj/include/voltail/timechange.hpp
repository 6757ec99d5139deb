// Critical exponential moments of the integrated-CIR clock via Riccati
// blow-up, the moment-explosion correspondence with the time-changed CEV
// terminal value, the digital tail slope, and the SABR clock Gaussian bounds.

#pragma once

#include <stdexcept>
#include <string>

#include "voltail/cev.hpp"

namespace voltail {

// dv = kappa (theta - v) dt + sigma_v sqrt(v) dW, all parameters positive.
struct CirParams {
    double kappa;
    double theta;
    double sigma_v;
    double v0;

    void validate() const {
        if (!(kappa > 0.0) || !(theta > 0.0) || !(sigma_v > 0.0) || !(v0 > 0.0))
            throw std::invalid_argument("CirParams requires all parameters > 0");
    }
};

// E exp(lambda * int_0^T v ds) if finite; otherwise the detected blow-up time
// of the Riccati component B.
struct CirMgfResult {
    bool exploded = false;
    double value = 0.0;       // exp(A + B v0) when finite
    double log_value = 0.0;   // A + B v0 when finite
    double blowup_time = 0.0; // < T when exploded
};

CirMgfResult cir_mgf_integrated(const CirParams& p, double lambda, double T);

struct CriticalMoment {
    double lambda_star = 0.0; // +inf when no explosion below the search cap
    double T = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// Bisection on the explosion flag; relative tolerance 1e-6, search cap 1e12
// (beyond the cap the moment is reported as +inf).
CriticalMoment critical_lambda(const CirParams& p, double T);

// The paired explosion statement of the time-changed CEV terminal value:
// sup{ lambda : E exp(sqrt(2 lambda) z(S_T)) < inf } equals lambda_star,
// where z(S) = S^{-beta} / (delta |beta|).
struct MomentCorrespondence {
    double lambda_star;
    double cev_delta;
    double cev_beta;
    std::string transform; // human-readable description of z(S)
};

MomentCorrespondence cev_moment_correspondence(const CevParams& cev, const CriticalMoment& cm);

// z(S) = S^{-beta} / (delta |beta|), the tail coordinate of the correspondence.
double cev_tail_transform(const CevParams& cev, double s);

// sqrt(2 lambda_star): exponential decay slope of -log P(z(S_T) > x) / x.
double digital_tail_slope(const CriticalMoment& cm);

// Gaussian bounds for P(tau(T)/T > x) of the SABR clock:
//   ( exp(-x^2 (1+eps) / ((8/3) t)),  exp(-x^2 (1+eps) / (8 t)) ).
struct SabrClockBounds {
    double lower;
    double upper;
};
SabrClockBounds sabr_clock_gaussian_bounds(double x, double t, double eps);

} // namespace voltail
