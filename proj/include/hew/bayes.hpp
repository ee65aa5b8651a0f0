#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hew/estimation.hpp"

namespace hew {

/// Gamma(shape, rate) prior.
class GammaPrior {
public:
    GammaPrior(double shape, double rate);

    double shape() const noexcept { return shape_; }
    double rate() const noexcept { return rate_; }
    double mean() const noexcept { return shape_ / rate_; }
    double variance() const noexcept { return shape_ / (rate_ * rate_); }
    /// Normalized log-density; -infinity for x <= 0.
    double log_pdf(double x) const noexcept;

private:
    double shape_;
    double rate_;
    double log_norm_;  // shape ln(rate) - lgamma(shape)
};

/// Moment matching: shape = mean^2 / sd^2, rate = mean / sd^2.
GammaPrior elicit_gamma(double mean, double sd);

/// Independent priors for (theta, k, beta, alpha), in that order.
using PriorSet = std::array<GammaPrior, 4>;

/// Priors centred on an MLE with its Hessian standard errors. Throws
/// EstimationError when the fit carries no standard errors.
PriorSet elicit_priors(const FitResult& mle);

/// Unnormalized log posterior: prior log-densities plus ln L. Returns
/// -infinity outside the positive orthant or when the value is not finite.
double log_posterior(const Point4& p, const PriorSet& priors, const Sample& s);

struct MhConfig {
    std::size_t iterations = 50000;
    std::size_t burn_in = 10000;
    std::size_t thinning = 5;
    std::uint64_t seed = 1;
    /// Standard deviations of the Gaussian random-walk increments.
    std::array<double, 4> proposal_scale{0.1, 0.1, 0.1, 0.1};
    /// Ignore the likelihood and sample the prior (used to test the sampler).
    bool prior_only = false;

    void validate() const;
};

struct Chain {
    std::vector<HewParams> draws;        // retained after burn-in and thinning
    std::vector<std::size_t> iteration;  // 1-based iteration of each retained draw
    std::vector<bool> accepted_flag;     // whether that iteration's proposal was accepted
    std::size_t accepted = 0;
    std::size_t proposed = 0;
    std::size_t accepted_after_burn_in = 0;
    std::size_t burn_in = 0;
    std::size_t thinning = 1;
    std::uint64_t seed = 0;
    std::array<double, 4> proposal_scale{};
    std::optional<std::string> warning;

    double acceptance_rate() const noexcept {
        return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
    }
    /// Component i of every retained draw.
    std::vector<double> component(std::size_t i) const;
};

/// Random-walk Metropolis-Hastings over the HEW posterior, started at `start`.
Chain mh_sample(const PriorSet& priors, const Sample& s, const HewParams& start, const MhConfig& cfg);

/// Componentwise median of the retained draws (at least 100).
HewParams posterior_median(const Chain& c);

/// Shortest window of sorted draws holding ceil(level * N) of them; ties go to
/// the leftmost window. Needs at least 100 draws.
Interval empirical_hpd(std::span<const double> draws, double level);

/// Central window with the same number of draws as empirical_hpd.
Interval equal_tailed_interval(std::span<const double> draws, double level);

struct PosteriorSummary {
    HewParams median;
    std::array<Interval, 4> hpd;
    std::array<Interval, 4> equal_tailed;
    double level;
    double acceptance_rate;
};

PosteriorSummary summarize(const Chain& c, double level = 0.95);

/// CSV with columns iteration,theta,k,beta,alpha,accepted.
void write_chain_csv(const Chain& c, std::ostream& out);

}  // namespace hew
