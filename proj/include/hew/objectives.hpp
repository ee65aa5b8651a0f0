#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "hew/params.hpp"
#include "hew/sample.hpp"

namespace hew {

enum class ObjectiveKind { MLE, OLS, WLS, MPS, AD, CvM };

enum class Direction { Maximize, Minimize };

constexpr Direction direction(ObjectiveKind kind) noexcept {
    return (kind == ObjectiveKind::MLE || kind == ObjectiveKind::MPS) ? Direction::Maximize : Direction::Minimize;
}

std::string_view objective_name(ObjectiveKind kind) noexcept;

/// Parses mle, ols, wls, mps, ad, cvm (case-insensitive).
ObjectiveKind parse_objective(std::string_view name);

/// Numerical events met while evaluating an objective.
struct ObjectiveDiagnostics {
    std::size_t tied_spacings = 0;  // MPS spacings replaced by the log-density
    std::size_t clamped_cdf = 0;    // AD cdf values clamped into [eps, 1-eps]
};

inline constexpr double kAdClampEpsilon = 1e-15;

struct PlottingMoments {
    double mean;
    double variance;
};

/// Mean i/(n+1) and variance i(n-i+1)/((n+1)^2 (n+2)) of F(x_{i:n}); 1 <= i <= n.
PlottingMoments plotting_moments(std::size_t i, std::size_t n);

/// (n+1)^2 (n+2) / (i (n-i+1)), the reciprocal of the plotting-position variance.
double wls_weight(std::size_t i, std::size_t n);

/// -ln L. Non-finite values are reported as +infinity.
double neg_log_likelihood(const HewParams& p, const Sample& s);

double ols_objective(const HewParams& p, const Sample& s);
double wls_objective(const HewParams& p, const Sample& s);

/// Mean log-spacing H over the n+1 spacings of the augmented cdf grid.
double mps_log_objective(const HewParams& p, const Sample& s, ObjectiveDiagnostics* diag = nullptr);

/// Anderson-Darling statistic of the sample against HEW(p).
double ad_objective(const HewParams& p, const Sample& s, ObjectiveDiagnostics* diag = nullptr);

/// Cramer-von Mises statistic of the sample against HEW(p).
double cvm_objective(const HewParams& p, const Sample& s);

/// Value of `kind` in its natural direction (ln L for MLE, H for MPS).
double objective_value(ObjectiveKind kind, const HewParams& p, const Sample& s, ObjectiveDiagnostics* diag = nullptr);

// Statistic kernels over model cdf values at the ordered sample. `cdf` and
// `sf` must be ascending/descending respectively and of equal length.

double ols_from_cdf(std::span<const double> cdf);
double wls_from_cdf(std::span<const double> cdf);
double ad_from_cdf(std::span<const double> cdf, std::span<const double> sf, ObjectiveDiagnostics* diag = nullptr);
double cvm_from_cdf(std::span<const double> cdf);
/// Mean log spacing over 0, cdf..., 1; the last spacing is taken from sf[n-1].
/// A zero spacing gives -infinity.
double mps_from_cdf(std::span<const double> cdf, std::span<const double> sf);

}  // namespace hew
