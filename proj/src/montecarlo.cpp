#include "hew/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "hew/bayes.hpp"
#include "hew/estimation.hpp"
#include "hew/parallel.hpp"
#include "hew/rng.hpp"

namespace hew {

std::string_view study_method_name(StudyMethod m) noexcept {
    switch (m) {
        case StudyMethod::MLE: return "MLE";
        case StudyMethod::OLS: return "OLS";
        case StudyMethod::WLS: return "WLS";
        case StudyMethod::MPS: return "MPS";
        case StudyMethod::AD: return "AD";
        case StudyMethod::CvM: return "CvM";
        case StudyMethod::Bayes: return "Bayes";
    }
    return "?";
}

StudyMethod parse_study_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "bayes") return StudyMethod::Bayes;
    switch (parse_objective(lower)) {
        case ObjectiveKind::MLE: return StudyMethod::MLE;
        case ObjectiveKind::OLS: return StudyMethod::OLS;
        case ObjectiveKind::WLS: return StudyMethod::WLS;
        case ObjectiveKind::MPS: return StudyMethod::MPS;
        case ObjectiveKind::AD: return StudyMethod::AD;
        case ObjectiveKind::CvM: return StudyMethod::CvM;
    }
    throw DomainError("unknown study method");
}

void StudyConfig::validate() const {
    if (replications < 2) throw DomainError("StudyConfig: replications must be >= 2");
    if (sample_sizes.empty()) throw DomainError("StudyConfig: sample_sizes must not be empty");
    for (auto n : sample_sizes) {
        if (n < 10) throw DomainError("StudyConfig: every sample size must be >= 10");
    }
    if (methods.empty()) throw DomainError("StudyConfig: methods must not be empty");
    if (restarts < 1) throw DomainError("StudyConfig: restarts must be >= 1");
}

const CellStats& StudyReport::cell(StudyMethod m, std::size_t n) const {
    for (const auto& c : cells) {
        if (c.method == m && c.n == n) return c;
    }
    throw DomainError("StudyReport: no such cell");
}

std::uint64_t replication_seed(std::uint64_t base, std::size_t replication, std::size_t n) noexcept {
    return derive_seed(base + replication, n);
}

namespace {

ObjectiveKind objective_of(StudyMethod m) {
    switch (m) {
        case StudyMethod::MLE: return ObjectiveKind::MLE;
        case StudyMethod::OLS: return ObjectiveKind::OLS;
        case StudyMethod::WLS: return ObjectiveKind::WLS;
        case StudyMethod::MPS: return ObjectiveKind::MPS;
        case StudyMethod::AD: return ObjectiveKind::AD;
        case StudyMethod::CvM: return ObjectiveKind::CvM;
        case StudyMethod::Bayes: break;
    }
    return ObjectiveKind::MLE;
}

}  // namespace

std::optional<HewParams> default_estimate(const StudyConfig& cfg, StudyMethod m, const Sample& s, std::uint64_t seed) {
    FitConfig fc;
    fc.objective = objective_of(m);
    fc.restarts = cfg.restarts;
    fc.seed = seed;
    if (cfg.start_at_truth) fc.start = cfg.truth;
    if (m != StudyMethod::Bayes) return optimize(fc, s).estimates;

    // Priors elicited from this replication's own MLE and Hessian.
    fc.standard_errors = true;
    const FitResult mle = optimize(fc, s);
    if (!mle.std_errors) return std::nullopt;
    MhConfig mh;
    mh.iterations = cfg.bayes.iterations;
    mh.burn_in = cfg.bayes.burn_in;
    mh.thinning = cfg.bayes.thinning;
    mh.proposal_scale = cfg.bayes.proposal_scale;
    mh.seed = derive_seed(seed, 0xBA7E5);
    const Chain chain = mh_sample(elicit_priors(mle), s, mle.estimates, mh);
    return posterior_median(chain);
}

CellStats aggregate_cell(StudyMethod m, std::size_t n, const HewParams& truth,
                         const std::vector<std::optional<HewParams>>& estimates, double total_seconds) {
    CellStats c{m, n, {}, {}, 0, 0, 0.0, true};
    const auto t = truth.to_array();
    std::vector<std::array<double, 4>> errors;
    for (const auto& e : estimates) {
        if (!e) {
            ++c.failures;
            continue;
        }
        const auto v = e->to_array();
        std::array<double, 4> d{};
        for (std::size_t i = 0; i < 4; ++i) d[i] = v[i] - t[i];
        errors.push_back(d);
    }
    c.successes = errors.size();
    if (c.successes > 0) {
        const double k = static_cast<double>(c.successes);
        for (std::size_t i = 0; i < 4; ++i) {
            // scale by the largest error so that estimates near the overflow
            // threshold still give finite moments
            double scale = 0.0;
            for (const auto& d : errors) scale = std::max(scale, std::abs(d[i]));
            if (scale == 0.0) continue;
            double sum = 0.0, sum_sq = 0.0;
            for (const auto& d : errors) {
                const double u = d[i] / scale;
                sum += u;
                sum_sq += u * u;
            }
            c.bias[i] = scale * (sum / k);
            c.rmse[i] = scale * std::sqrt(sum_sq / k);
        }
    } else {
        c.rmse.fill(std::nan(""));
        c.bias.fill(std::nan(""));
    }
    const std::size_t total = estimates.size();
    c.valid = total > 0 && static_cast<double>(c.failures) <= 0.2 * static_cast<double>(total);
    c.mean_seconds = total > 0 ? total_seconds / static_cast<double>(total) : 0.0;
    return c;
}

StudyReport run_study(const StudyConfig& cfg) {
    return run_study(cfg, [&cfg](StudyMethod m, const Sample& s, std::uint64_t seed, std::size_t) {
        return default_estimate(cfg, m, s, seed);
    });
}

StudyReport run_study(const StudyConfig& cfg, const Estimator& estimator) {
    cfg.validate();
    const std::size_t reps = cfg.replications;
    const std::size_t cells = cfg.methods.size() * cfg.sample_sizes.size();

    std::vector<std::optional<HewParams>> estimates(cells * reps);
    std::vector<double> seconds(cells * reps, 0.0);

    parallel_for(cells * reps, cfg.threads, [&](std::size_t task) {
        const std::size_t cell = task / reps;
        const std::size_t rep = task % reps;
        const StudyMethod method = cfg.methods[cell / cfg.sample_sizes.size()];
        const std::size_t n = cfg.sample_sizes[cell % cfg.sample_sizes.size()];
        const std::uint64_t seed = replication_seed(cfg.seed, rep, n);
        const Sample s = sample_hew(cfg.truth, n, seed);

        const auto t0 = std::chrono::steady_clock::now();
        try {
            estimates[task] = estimator(method, s, seed, rep);
        } catch (const EstimationError&) {
            estimates[task].reset();
        } catch (const DomainError&) {
            estimates[task].reset();
        }
        seconds[task] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });

    StudyReport report{cfg.truth, reps, {}};
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const StudyMethod method = cfg.methods[cell / cfg.sample_sizes.size()];
        const std::size_t n = cfg.sample_sizes[cell % cfg.sample_sizes.size()];
        const auto first = estimates.begin() + static_cast<std::ptrdiff_t>(cell * reps);
        std::vector<std::optional<HewParams>> slice(first, first + static_cast<std::ptrdiff_t>(reps));
        double total = 0.0;
        for (std::size_t r = 0; r < reps; ++r) total += seconds[cell * reps + r];
        report.cells.push_back(aggregate_cell(method, n, cfg.truth, slice, total));
    }
    return report;
}

void write_study_csv(const StudyReport& r, std::ostream& out) {
    const auto old_precision = out.precision(17);
    out << "method,n,parameter,rmse,bias\n";
    for (const auto& c : r.cells) {
        for (std::size_t i = 0; i < 4; ++i) {
            out << study_method_name(c.method) << ',' << c.n << ',' << kParamNames[i] << ',' << c.rmse[i] << ','
                << c.bias[i] << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace hew
