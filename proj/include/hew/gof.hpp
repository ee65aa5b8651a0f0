#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "hew/distributions.hpp"
#include "hew/estimation.hpp"
#include "hew/information_criteria.hpp"
#include "hew/objectives.hpp"
#include "hew/sample.hpp"

namespace hew {

enum class Statistic { KS, AD, CvM };

std::string_view statistic_name(Statistic s) noexcept;

/// D = max_i max(i/n - F_i, F_i - (i-1)/n) over ascending model cdf values.
double ks_statistic(std::span<const double> cdf);

struct GofStatistics {
    double ks;
    double ad;
    double cvm;
    ObjectiveDiagnostics diagnostics;
};

/// KS, AD and CvM of the sample against `m`. For HEW these are the same
/// kernels the estimation objectives use.
GofStatistics gof_statistics(const Model& m, const Sample& s);

double ad_statistic(const Model& m, const Sample& s);
double cvm_statistic(const Model& m, const Sample& s);

// Limiting null distributions for a fully specified model. With estimated
// parameters these p-values are anti-conservative.

/// Kolmogorov distribution with Stephens' finite-n correction.
double ks_pvalue_asymptotic(double d, std::size_t n);
/// Marsaglia & Marsaglia (2004) approximation to the limiting AD law.
double ad_pvalue_asymptotic(double a2);
/// Series for the limiting Cramer-von Mises law (Anderson & Darling, 1952).
double cvm_pvalue_asymptotic(double w2);

struct BootstrapConfig {
    std::size_t replicates = 999;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    /// Restarts used when refitting HEW to each bootstrap sample.
    std::size_t hew_restarts = 2;
};

/// (1 + #{T_b >= observed}) / (B + 1).
double bootstrap_p_from(double observed, std::span<const double> replicates);

struct BootstrapPValues {
    double ks;
    double ad;
    double cvm;
    std::size_t used;
    std::size_t failures;
};

/// Parametric bootstrap: draws n values from `fitted`, refits a `kind` model
/// by maximum likelihood, recomputes all three statistics. Replicate b uses
/// seed derive_seed(cfg.seed, b). Throws EstimationError when more than 10%
/// of the refits fail.
BootstrapPValues bootstrap_pvalues(ModelKind kind, const Model& fitted, const Sample& s, const BootstrapConfig& cfg);

/// Single-statistic form of bootstrap_pvalues.
double bootstrap_pvalue(ModelKind kind, const Model& fitted, const Sample& s, Statistic statistic,
                        const BootstrapConfig& cfg);

enum class PValueMethod { Asymptotic, Bootstrap };

struct TestResult {
    double statistic;
    double p_value;
};

struct GofReport {
    TestResult ks;
    TestResult ad;
    TestResult cvm;
    double aic;
    double bic;
    double loglik;
    PValueMethod p_value_method;
    std::size_t bootstrap_replicates = 0;
    std::size_t bootstrap_failures = 0;
};

GofReport gof_report(ModelKind kind, const Model& fitted, const Sample& s, PValueMethod method,
                     const BootstrapConfig& cfg = {});

}  // namespace hew
