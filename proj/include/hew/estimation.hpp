#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "hew/distributions.hpp"
#include "hew/objectives.hpp"
#include "hew/sample.hpp"

namespace hew {

enum class OptimizerKind { NelderMead, Genetic };

std::string_view optimizer_name(OptimizerKind kind) noexcept;
OptimizerKind parse_optimizer(std::string_view name);

struct FitConfig {
    ObjectiveKind objective = ObjectiveKind::MLE;
    OptimizerKind optimizer = OptimizerKind::NelderMead;
    /// Empty selects the automatic start (Weibull MLE embedded at theta = k = 1).
    std::optional<HewParams> start;
    /// Budget per restart (and per GA phase).
    std::size_t max_evaluations = 20000;
    double tolerance = 1e-8;
    std::size_t restarts = 5;
    std::uint64_t seed = 1;
    /// Attach Hessian standard errors and Wald intervals (MLE only).
    bool standard_errors = false;
    double ci_level = 0.95;

    /// Throws DomainError on an invalid configuration.
    void validate() const;
};

struct Interval {
    double lower;
    double upper;
    double width() const noexcept { return upper - lower; }
    bool contains(double v) const noexcept { return lower <= v && v <= upper; }
};

struct FitResult {
    ObjectiveKind objective;
    HewParams estimates;
    std::optional<std::array<double, 4>> std_errors;
    std::optional<std::array<Interval, 4>> ci;
    double loglik;
    /// Objective at the estimates in its natural direction.
    double objective_value;
    double aic;
    double bic;
    bool converged;
    std::size_t evaluations;
    ObjectiveDiagnostics diagnostics;
};

/// Fits HEW to `s` under `cfg`. Works on log-parameters, so positivity holds
/// by construction. Throws EstimationError when no finite objective value is
/// ever found.
FitResult optimize(const FitConfig& cfg, const Sample& s);

/// The starting point used by FitConfig's automatic mode.
HewParams auto_start(const Sample& s);

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Point4 = std::array<double, 4>;

/// Central-difference Hessian of an arbitrary function of four variables,
/// with per-coordinate step rel_step * |x_i|. Symmetrized.
Matrix4 numeric_hessian(const std::function<double(const Point4&)>& f, const Point4& x, double rel_step = 1e-4);

/// Hessian of neg_log_likelihood at p.
Matrix4 numeric_hessian(const HewParams& p, const Sample& s, double rel_step = 1e-4);

/// Square roots of the inverse-Hessian diagonal, or empty when the Hessian is
/// not positive definite.
std::optional<std::array<double, 4>> standard_errors(const Matrix4& hessian);

/// estimate +/- z * std_error with z the standard normal quantile at (1+level)/2.
Interval asymptotic_ci(double estimate, double std_error, double level = 0.95);

/// Maximum-likelihood fit of a two-parameter comparison model.
struct ComparisonFit {
    ComparisonModel model;
    double loglik;
    double aic;
    double bic;
    bool converged;
    std::size_t evaluations;
};

enum class ModelKind { HEW, Weibull, TruncatedWeibull, ExpWeibull };

std::string_view model_kind_name(ModelKind kind) noexcept;

/// MLE of a comparison model; TruncatedWeibull uses gamma = max(sample).
ComparisonFit fit_comparison(ModelKind kind, const Sample& s, std::size_t restarts = 3, std::uint64_t seed = 1);

/// Log-likelihood of any model at the sample.
double log_likelihood(const Model& m, const Sample& s);

}  // namespace hew
