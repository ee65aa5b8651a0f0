#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "hew/params.hpp"
#include "hew/sample.hpp"

namespace hew {

enum class StudyMethod { MLE, OLS, WLS, MPS, AD, CvM, Bayes };

inline constexpr std::array<StudyMethod, 7> kAllStudyMethods{StudyMethod::MLE, StudyMethod::OLS, StudyMethod::WLS,
                                                             StudyMethod::MPS, StudyMethod::AD,  StudyMethod::CvM,
                                                             StudyMethod::Bayes};

std::string_view study_method_name(StudyMethod m) noexcept;
StudyMethod parse_study_method(std::string_view name);

struct BayesStudySettings {
    std::size_t iterations = 20000;
    std::size_t burn_in = 5000;
    std::size_t thinning = 5;
    std::array<double, 4> proposal_scale{0.1, 0.1, 0.1, 0.1};
};

struct StudyConfig {
    HewParams truth{0.1, 0.13, 10.0, 1.0};
    std::vector<std::size_t> sample_sizes{25, 50, 100, 200};
    std::size_t replications = 200;
    std::vector<StudyMethod> methods{kAllStudyMethods.begin(), kAllStudyMethods.end()};
    std::uint64_t seed = 20240101;
    std::size_t restarts = 5;
    /// Start every fit at the true parameters; false uses the automatic start.
    bool start_at_truth = true;
    BayesStudySettings bayes;
    std::size_t threads = 0;

    void validate() const;
};

struct CellStats {
    StudyMethod method;
    std::size_t n;
    std::array<double, 4> rmse;
    std::array<double, 4> bias;
    std::size_t successes;
    std::size_t failures;
    double mean_seconds;
    /// False when more than 20% of the replications failed.
    bool valid;
};

struct StudyReport {
    HewParams truth;
    std::size_t replications;
    std::vector<CellStats> cells;

    const CellStats& cell(StudyMethod m, std::size_t n) const;
};

/// Replication r of size n uses the sample seed derive_seed(seed + r, n).
std::uint64_t replication_seed(std::uint64_t base, std::size_t replication, std::size_t n) noexcept;

/// Estimates one replication; returning nullopt or throwing counts as a failure.
using Estimator =
    std::function<std::optional<HewParams>(StudyMethod, const Sample&, std::uint64_t seed, std::size_t replication)>;

/// The estimator used by run_study: restarted Nelder-Mead for the six
/// objectives; for Bayes, MLE-elicited Gamma priors and the posterior median.
std::optional<HewParams> default_estimate(const StudyConfig& cfg, StudyMethod m, const Sample& s, std::uint64_t seed);

StudyReport run_study(const StudyConfig& cfg);
StudyReport run_study(const StudyConfig& cfg, const Estimator& estimator);

/// RMSE and bias over the successful estimates of one cell.
CellStats aggregate_cell(StudyMethod m, std::size_t n, const HewParams& truth,
                         const std::vector<std::optional<HewParams>>& estimates, double total_seconds);

/// Long format: method,n,parameter,rmse,bias.
void write_study_csv(const StudyReport& r, std::ostream& out);

}  // namespace hew
