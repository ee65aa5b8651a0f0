#pragma once

// Scalar closed forms shared by the public distribution functions and the
// scalar batch kernels. Everything is expressed through the Weibull
// cumulative hazard z = alpha * x^beta, evaluated in log space.

#include <cmath>
#include <limits>

namespace hew::detail {

/// Parameter-dependent constants reused across a batch of evaluations.
struct HewCoeffs {
    double theta;
    double theta_bar;
    double log_theta;
    double k;
    double inv_k;
    double beta;
    double log_alpha;
    double log_norm;    // ln(theta)/k + ln(alpha) + ln(beta)
    double tail_power;  // (k + 1) / k

    static HewCoeffs make(double theta, double k, double beta, double alpha) noexcept {
        HewCoeffs c{};
        c.theta = theta;
        c.theta_bar = 1.0 - theta;
        c.log_theta = std::log(theta);
        c.k = k;
        c.inv_k = 1.0 / k;
        c.beta = beta;
        c.log_alpha = std::log(alpha);
        c.log_norm = c.log_theta / k + c.log_alpha + std::log(beta);
        c.tail_power = (k + 1.0) / k;
        return c;
    }
};

// Switch-over points between the two branches of each stable formula.
inline constexpr double kLogDenomSwitch = 1.0;
inline constexpr double kLogSfSwitch = 30.0;

/// ln(1 - theta_bar * exp(-u)) for u = k*z >= 0.
inline double log_denominator(const HewCoeffs& c, double u) noexcept {
    if (u < kLogDenomSwitch) {
        // 1 - (1-theta) e^{-u} = e^{-u} (theta + e^{u} - 1)
        return -u + std::log(c.theta + std::expm1(u));
    }
    return std::log1p(-c.theta_bar * std::exp(-u));
}

/// ln S(x) written as -(1/k) ln(1 + expm1(u)/theta) with u = k*z.
inline double log_sf_from_u(const HewCoeffs& c, double u) noexcept {
    if (u < kLogSfSwitch) {
        return -c.inv_k * std::log1p(std::expm1(u) / c.theta);
    }
    // ln(expm1(u)/theta), then ln(1 + y) = ln y + ln(1 + 1/y)
    const double log_y = u - c.log_theta + std::log1p(-std::exp(-u));
    return -c.inv_k * (log_y + std::log1p(std::exp(-log_y)));
}

inline double log_pdf(const HewCoeffs& c, double x) noexcept {
    const double log_x = std::log(x);
    const double z = std::exp(c.log_alpha + c.beta * log_x);
    const double u = c.k * z;
    return c.log_norm + (c.beta - 1.0) * log_x - z - c.tail_power * log_denominator(c, u);
}

inline double log_sf(const HewCoeffs& c, double x) noexcept {
    if (x <= 0.0) return 0.0;
    const double z = std::exp(c.log_alpha + c.beta * std::log(x));
    return log_sf_from_u(c, c.k * z);
}

}  // namespace hew::detail
