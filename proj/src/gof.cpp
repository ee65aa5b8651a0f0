#include "hew/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hew/parallel.hpp"
#include "hew/rng.hpp"
#include "hew/simd/kernels.hpp"

namespace hew {

std::string_view statistic_name(Statistic s) noexcept {
    switch (s) {
        case Statistic::KS: return "KS";
        case Statistic::AD: return "AD";
        case Statistic::CvM: return "CvM";
    }
    return "?";
}

double ks_statistic(std::span<const double> cdf) {
    const double n = static_cast<double>(cdf.size());
    double d = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        const double above = static_cast<double>(i + 1) / n - cdf[i];
        const double below = cdf[i] - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return d;
}

GofStatistics gof_statistics(const Model& m, const Sample& s) {
    const std::size_t n = s.size();
    std::vector<double> F(n), S(n);
    if (const auto* p = std::get_if<HewParams>(&m)) {
        simd::cdf_sf(*p, s.values(), F, S);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            F[i] = cdf(m, s[i]);
            S[i] = sf(m, s[i]);
        }
    }
    GofStatistics out{};
    out.ks = ks_statistic(F);
    out.ad = ad_from_cdf(F, S, &out.diagnostics);
    out.cvm = cvm_from_cdf(F);
    return out;
}

double ad_statistic(const Model& m, const Sample& s) { return gof_statistics(m, s).ad; }
double cvm_statistic(const Model& m, const Sample& s) { return gof_statistics(m, s).cvm; }

double ks_pvalue_asymptotic(double d, std::size_t n) {
    if (!(d >= 0.0) || n == 0) throw DomainError("ks_pvalue_asymptotic: need d >= 0 and n >= 1");
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // P(K <= lambda) = sqrt(2 pi)/lambda * sum exp(-(2j-1)^2 pi^2 / (8 lambda^2))
        const double c = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double acc = 0.0;
        for (int j = 1; j <= 20; ++j) {
            const double t = 2.0 * j - 1.0;
            acc += std::exp(c * t * t);
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * acc, 0.0, 1.0);
    }
    double acc = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        acc += (j % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-17) break;
    }
    return std::clamp(acc, 0.0, 1.0);
}

double ad_pvalue_asymptotic(double z) {
    if (!(z >= 0.0)) throw DomainError("ad_pvalue_asymptotic: statistic must be >= 0");
    if (z == 0.0) return 1.0;
    double cdf;
    if (z < 2.0) {
        cdf = std::exp(-1.2337141 / z) / std::sqrt(z) *
              (2.00012 + (.247105 - (.0649821 - (.0347962 - (.011672 - .00168691 * z) * z) * z) * z) * z);
    } else {
        cdf = std::exp(-std::exp(1.0776 - (2.30695 - (.43424 - (.082433 - (.008056 - .0003146 * z) * z) * z) * z) * z));
    }
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

double cvm_pvalue_asymptotic(double w2) {
    if (!(w2 >= 0.0)) throw DomainError("cvm_pvalue_asymptotic: statistic must be >= 0");
    if (w2 <= 0.0) return 1.0;
    if (w2 > 3.0) return 0.0;  // below 1e-16 beyond this point
    // coefficient Gamma(j+1/2) / (Gamma(1/2) j!) = (2j)! / (4^j (j!)^2)
    double coef = 1.0;
    double acc = 0.0;
    for (int j = 0; j < 500; ++j) {
        if (j > 0) coef *= (2.0 * j - 1.0) / (2.0 * j);
        const double a = 4.0 * j + 1.0;
        const double arg = a * a / (16.0 * w2);
        if (arg > 700.0) break;
        acc += coef * std::sqrt(a) * std::exp(-arg) * std::cyl_bessel_k(0.25, arg);
    }
    const double cdf = acc / (std::numbers::pi * std::sqrt(w2));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

double bootstrap_p_from(double observed, std::span<const double> replicates) {
    const auto exceed = std::count_if(replicates.begin(), replicates.end(), [&](double t) { return t >= observed; });
    return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(replicates.size()) + 1.0);
}

namespace {

Model refit(ModelKind kind, const Model& fitted, const Sample& s, const BootstrapConfig& cfg, std::uint64_t seed) {
    if (kind == ModelKind::HEW) {
        FitConfig fc;
        fc.start = std::get<HewParams>(fitted);
        fc.restarts = cfg.hew_restarts;
        fc.max_evaluations = 5000;
        fc.seed = seed;
        return optimize(fc, s).estimates;
    }
    return std::visit([](const auto& c) -> Model { return c; }, fit_comparison(kind, s, 2, seed).model);
}

}  // namespace

BootstrapPValues bootstrap_pvalues(ModelKind kind, const Model& fitted, const Sample& s, const BootstrapConfig& cfg) {
    if (cfg.replicates < 99) throw DomainError("bootstrap: at least 99 replicates are required");
    if ((kind == ModelKind::HEW) != std::holds_alternative<HewParams>(fitted)) {
        throw DomainError("bootstrap: model kind does not match the fitted model");
    }
    const auto observed = gof_statistics(fitted, s);

    struct Slot {
        bool ok = false;
        GofStatistics stats{};
    };
    std::vector<Slot> slots(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t b) {
        const std::uint64_t seed = derive_seed(cfg.seed, b);
        try {
            const Sample boot = sample_model(fitted, s.size(), seed);
            const Model m = refit(kind, fitted, boot, cfg, seed);
            slots[b].stats = gof_statistics(m, boot);
            slots[b].ok = std::isfinite(slots[b].stats.ks) && std::isfinite(slots[b].stats.ad) &&
                          std::isfinite(slots[b].stats.cvm);
        } catch (const EstimationError&) {
        } catch (const DomainError&) {
        }
    });

    std::vector<double> ks, ad, cvm;
    std::size_t failures = 0;
    for (const auto& slot : slots) {
        if (!slot.ok) {
            ++failures;
            continue;
        }
        ks.push_back(slot.stats.ks);
        ad.push_back(slot.stats.ad);
        cvm.push_back(slot.stats.cvm);
    }
    if (static_cast<double>(failures) > 0.1 * static_cast<double>(cfg.replicates)) {
        throw EstimationError("bootstrap: more than 10% of the refits failed",
                              std::to_string(failures) + " of " + std::to_string(cfg.replicates));
    }
    return {bootstrap_p_from(observed.ks, ks), bootstrap_p_from(observed.ad, ad), bootstrap_p_from(observed.cvm, cvm),
            ks.size(), failures};
}

double bootstrap_pvalue(ModelKind kind, const Model& fitted, const Sample& s, Statistic statistic,
                        const BootstrapConfig& cfg) {
    const auto p = bootstrap_pvalues(kind, fitted, s, cfg);
    switch (statistic) {
        case Statistic::KS: return p.ks;
        case Statistic::AD: return p.ad;
        case Statistic::CvM: return p.cvm;
    }
    return p.ks;
}

GofReport gof_report(ModelKind kind, const Model& fitted, const Sample& s, PValueMethod method,
                     const BootstrapConfig& cfg) {
    const auto stats = gof_statistics(fitted, s);
    const double ll = log_likelihood(fitted, s);
    const auto ic = information_criteria(ll, parameter_count(fitted), s.size());
    GofReport r{};
    r.ks.statistic = stats.ks;
    r.ad.statistic = stats.ad;
    r.cvm.statistic = stats.cvm;
    r.loglik = ll;
    r.aic = ic.aic;
    r.bic = ic.bic;
    r.p_value_method = method;
    if (method == PValueMethod::Asymptotic) {
        r.ks.p_value = ks_pvalue_asymptotic(stats.ks, s.size());
        r.ad.p_value = ad_pvalue_asymptotic(stats.ad);
        r.cvm.p_value = cvm_pvalue_asymptotic(stats.cvm);
    } else {
        const auto p = bootstrap_pvalues(kind, fitted, s, cfg);
        r.ks.p_value = p.ks;
        r.ad.p_value = p.ad;
        r.cvm.p_value = p.cvm;
        r.bootstrap_replicates = p.used;
        r.bootstrap_failures = p.failures;
    }
    return r;
}

}  // namespace hew
