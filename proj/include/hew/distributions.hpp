#pragma once

#include <span>
#include <string_view>
#include <variant>

#include "hew/params.hpp"

namespace hew {

// ---------------------------------------------------------------------------
// Harris extended Weibull
// ---------------------------------------------------------------------------

/// Log-density of HEW(theta, k, beta, alpha) at x > 0.
double hew_log_pdf(const HewParams& p, double x);

/// Density; 0 for x < 0 and the right limit at x = 0.
double hew_pdf(const HewParams& p, double x);

/// Survival function S(x) = {theta e^{-k z} / (1 - theta_bar e^{-k z})}^{1/k},
/// z = alpha x^beta. S(0) = 1.
double hew_sf(const HewParams& p, double x);

/// F(x) = 1 - S(x), evaluated without cancellation in either tail.
double hew_cdf(const HewParams& p, double x);

/// Closed-form inverse of hew_cdf on (0, 1).
double hew_quantile(const HewParams& p, double u);

// ---------------------------------------------------------------------------
// Comparison models
// ---------------------------------------------------------------------------

/// F(x) = 1 - exp(-alpha x^beta).
struct Weibull {
    double beta;
    double alpha;
};

/// Weibull right-truncated at gamma:
/// F(x) = (1 - exp(-alpha x^beta)) / (1 - exp(-alpha gamma^beta)).
struct TruncatedWeibull {
    double beta;
    double alpha;
    double gamma;
};

/// F(x) = (1 - exp(-x^theta))^alpha.
struct ExpWeibull {
    double theta;
    double alpha;
};

using ComparisonModel = std::variant<Weibull, TruncatedWeibull, ExpWeibull>;

/// Throws DomainError unless every parameter of `m` is finite and positive.
void validate(const ComparisonModel& m);

double comparison_cdf(const ComparisonModel& m, double x);

/// Log-density; x outside the support is a DomainError.
double comparison_log_pdf(const ComparisonModel& m, double x);

double comparison_quantile(const ComparisonModel& m, double u);

std::string_view model_name(const ComparisonModel& m);

// ---------------------------------------------------------------------------
// Any fitted model
// ---------------------------------------------------------------------------

using Model = std::variant<HewParams, Weibull, TruncatedWeibull, ExpWeibull>;

Model to_model(const ComparisonModel& m);

double cdf(const Model& m, double x);
double sf(const Model& m, double x);
double log_pdf(const Model& m, double x);
double quantile(const Model& m, double u);

/// Number of free parameters (the truncation point is not estimated).
int parameter_count(const Model& m);

std::string_view model_name(const Model& m);

}  // namespace hew
