#include "hew/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "hew/rng.hpp"

namespace hew {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMinDraws = 100;

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

std::size_t window_size(std::size_t n, double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("interval level must lie in (0, 1)");
    if (n < kMinDraws) throw DomainError("at least 100 draws are required");
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(level * static_cast<double>(n))), 1, n);
}

}  // namespace

GammaPrior::GammaPrior(double shape, double rate) : shape_(shape), rate_(rate) {
    if (!(std::isfinite(shape) && shape > 0.0 && std::isfinite(rate) && rate > 0.0)) {
        throw DomainError("GammaPrior: shape and rate must be finite and > 0");
    }
    log_norm_ = shape * std::log(rate) - std::lgamma(shape);
}

double GammaPrior::log_pdf(double x) const noexcept {
    if (!(x > 0.0)) return kNegInf;
    return log_norm_ + (shape_ - 1.0) * std::log(x) - rate_ * x;
}

GammaPrior elicit_gamma(double mean, double sd) {
    if (!(mean > 0.0) || !(sd > 0.0)) throw DomainError("elicit_gamma: mean and sd must be > 0");
    const double var = sd * sd;
    return {mean * mean / var, mean / var};
}

PriorSet elicit_priors(const FitResult& mle) {
    if (!mle.std_errors) {
        throw EstimationError("elicit_priors: the fit has no standard errors (Hessian not positive definite)");
    }
    const auto est = mle.estimates.to_array();
    const auto& se = *mle.std_errors;
    return {elicit_gamma(est[0], se[0]), elicit_gamma(est[1], se[1]), elicit_gamma(est[2], se[2]),
            elicit_gamma(est[3], se[3])};
}

double log_posterior(const Point4& p, const PriorSet& priors, const Sample& s) {
    if (!HewParams::admissible(p)) return kNegInf;
    double lp = 0.0;
    for (std::size_t i = 0; i < 4; ++i) lp += priors[i].log_pdf(p[i]);
    lp -= neg_log_likelihood(HewParams::from_array(p), s);
    return std::isfinite(lp) ? lp : kNegInf;
}

void MhConfig::validate() const {
    if (iterations <= burn_in) throw DomainError("MhConfig: iterations must exceed burn_in");
    if (thinning < 1) throw DomainError("MhConfig: thinning must be >= 1");
    for (double s : proposal_scale) {
        if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("MhConfig: proposal scales must be > 0");
    }
}

std::vector<double> Chain::component(std::size_t i) const {
    std::vector<double> out;
    out.reserve(draws.size());
    for (const auto& d : draws) out.push_back(d.to_array()[i]);
    return out;
}

Chain mh_sample(const PriorSet& priors, const Sample& s, const HewParams& start, const MhConfig& cfg) {
    cfg.validate();
    auto target = [&](const Point4& p) {
        if (!cfg.prior_only) return log_posterior(p, priors, s);
        if (!HewParams::admissible(p)) return kNegInf;
        double lp = 0.0;
        for (std::size_t i = 0; i < 4; ++i) lp += priors[i].log_pdf(p[i]);
        return lp;
    };

    Chain chain;
    chain.burn_in = cfg.burn_in;
    chain.thinning = cfg.thinning;
    chain.seed = cfg.seed;
    chain.proposal_scale = cfg.proposal_scale;
    chain.draws.reserve((cfg.iterations - cfg.burn_in) / cfg.thinning);

    Rng rng(cfg.seed);
    Point4 current = start.to_array();
    double current_lp = target(current);
    if (!std::isfinite(current_lp)) throw EstimationError("mh_sample: the posterior is not finite at the start point");

    for (std::size_t it = 1; it <= cfg.iterations; ++it) {
        Point4 proposal = current;
        for (std::size_t j = 0; j < 4; ++j) proposal[j] += cfg.proposal_scale[j] * rng.normal();
        const double u = rng.uniform();
        ++chain.proposed;

        bool accept = false;
        if (HewParams::admissible(proposal)) {
            const double lp = target(proposal);
            accept = std::isfinite(lp) && std::log(u) < lp - current_lp;
            if (accept) {
                current = proposal;
                current_lp = lp;
            }
        }
        if (accept) {
            ++chain.accepted;
            if (it > cfg.burn_in) ++chain.accepted_after_burn_in;
        }
        if (it > cfg.burn_in && (it - cfg.burn_in) % cfg.thinning == 0) {
            chain.draws.push_back(HewParams::from_array(current));
            chain.iteration.push_back(it);
            chain.accepted_flag.push_back(accept);
        }
    }

    const double post_rate =
        static_cast<double>(chain.accepted_after_burn_in) / static_cast<double>(cfg.iterations - cfg.burn_in);
    if (post_rate < 0.01 || post_rate > 0.99) {
        std::ostringstream msg;
        msg << "acceptance rate after burn-in is " << std::setprecision(3) << post_rate
            << "; consider adjusting the proposal scale";
        chain.warning = msg.str();
    }
    return chain;
}

HewParams posterior_median(const Chain& c) {
    if (c.draws.size() < kMinDraws) throw DomainError("posterior_median: at least 100 retained draws are required");
    return {median_of(c.component(0)), median_of(c.component(1)), median_of(c.component(2)),
            median_of(c.component(3))};
}

Interval empirical_hpd(std::span<const double> draws, double level) {
    const std::size_t m = window_size(draws.size(), level);
    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t best = 0;
    double best_width = sorted[m - 1] - sorted[0];
    for (std::size_t j = 1; j + m <= sorted.size(); ++j) {
        const double w = sorted[j + m - 1] - sorted[j];
        if (w < best_width) {
            best_width = w;
            best = j;
        }
    }
    return {sorted[best], sorted[best + m - 1]};
}

Interval equal_tailed_interval(std::span<const double> draws, double level) {
    const std::size_t m = window_size(draws.size(), level);
    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t j = (sorted.size() - m) / 2;
    return {sorted[j], sorted[j + m - 1]};
}

PosteriorSummary summarize(const Chain& c, double level) {
    PosteriorSummary out{posterior_median(c), {}, {}, level, c.acceptance_rate()};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto comp = c.component(i);
        out.hpd[i] = empirical_hpd(comp, level);
        out.equal_tailed[i] = equal_tailed_interval(comp, level);
    }
    return out;
}

void write_chain_csv(const Chain& c, std::ostream& out) {
    const auto old_precision = out.precision(17);
    out << "iteration,theta,k,beta,alpha,accepted\n";
    for (std::size_t i = 0; i < c.draws.size(); ++i) {
        const auto& d = c.draws[i];
        out << c.iteration[i] << ',' << d.theta() << ',' << d.k() << ',' << d.beta() << ',' << d.alpha() << ','
            << (c.accepted_flag[i] ? 1 : 0) << '\n';
    }
    out.precision(old_precision);
}

}  // namespace hew
