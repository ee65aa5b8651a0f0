#include "hew/estimation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hew/information_criteria.hpp"
#include "hew/minimize.hpp"
#include "hew/rng.hpp"

namespace hew {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kJitter = 0.30;
constexpr std::size_t kPolishRounds = 4;

// Loss minimized over y = log(params).
double hew_loss(ObjectiveKind kind, std::span<const double> y, const Sample& s) {
    const Point4 v{std::exp(y[0]), std::exp(y[1]), std::exp(y[2]), std::exp(y[3])};
    if (!HewParams::admissible(v)) return kInf;
    const auto p = HewParams::from_array(v);
    double loss = 0.0;
    switch (kind) {
        case ObjectiveKind::MLE: loss = neg_log_likelihood(p, s); break;
        case ObjectiveKind::MPS: loss = -mps_log_objective(p, s); break;
        default: loss = objective_value(kind, p, s); break;
    }
    return std::isnan(loss) ? kInf : loss;
}

// Nelder-Mead, re-seeded at its own optimum until it stops improving.
MinimizeResult polished_nelder_mead(const ObjectiveFn& f, std::vector<double> start, const NelderMeadOptions& opts) {
    MinimizeResult res = nelder_mead(f, std::move(start), opts);
    for (std::size_t round = 0; round < kPolishRounds && std::isfinite(res.value); ++round) {
        MinimizeResult again = nelder_mead(f, res.x, opts);
        const std::size_t evals = res.evaluations + again.evaluations;
        const bool improved = again.value < res.value - 1e-12 * (1.0 + std::abs(res.value));
        if (again.value <= res.value) {
            res = std::move(again);
        }
        res.evaluations = evals;
        if (!improved) break;
    }
    return res;
}

std::vector<double> jittered_log_start(const std::vector<double>& start, std::size_t restart, Rng& rng) {
    std::vector<double> y(start.size());
    for (std::size_t j = 0; j < start.size(); ++j) {
        const double factor = restart == 0 ? 1.0 : 1.0 + rng.uniform(-kJitter, kJitter);
        y[j] = std::log(start[j] * factor);
    }
    return y;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view optimizer_name(OptimizerKind kind) noexcept {
    return kind == OptimizerKind::Genetic ? "genetic" : "nelder-mead";
}

OptimizerKind parse_optimizer(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "nelder-mead" || lower == "nm" || lower == "neldermead") return OptimizerKind::NelderMead;
    if (lower == "genetic" || lower == "ga") return OptimizerKind::Genetic;
    throw DomainError("unknown optimizer '" + std::string(name) + "'");
}

void FitConfig::validate() const {
    if (max_evaluations < 100) throw DomainError("FitConfig: max_evaluations must be >= 100");
    if (!(tolerance > 0.0)) throw DomainError("FitConfig: tolerance must be > 0");
    if (restarts < 1) throw DomainError("FitConfig: restarts must be >= 1");
    if (!(ci_level > 0.0 && ci_level < 1.0)) throw DomainError("FitConfig: ci_level must lie in (0, 1)");
}

HewParams auto_start(const Sample& s) {
    const auto weib = fit_comparison(ModelKind::Weibull, s);
    const auto& w = std::get<Weibull>(weib.model);
    return {1.0, 1.0, w.beta, w.alpha};
}

FitResult optimize(const FitConfig& cfg, const Sample& s) {
    cfg.validate();
    const HewParams start = cfg.start ? *cfg.start : auto_start(s);
    const auto start_arr = start.to_array();
    const std::vector<double> start_vec(start_arr.begin(), start_arr.end());

    const ObjectiveFn loss = [&](std::span<const double> y) { return hew_loss(cfg.objective, y, s); };
    const NelderMeadOptions nm_opts{cfg.max_evaluations, cfg.tolerance, 0.2};

    Rng rng(cfg.seed);
    std::optional<MinimizeResult> best;
    std::size_t total_evals = 0;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        auto y0 = jittered_log_start(start_vec, r, rng);
        MinimizeResult res;
        if (cfg.optimizer == OptimizerKind::NelderMead) {
            res = polished_nelder_mead(loss, std::move(y0), nm_opts);
        } else {
            GeneticOptions ga;
            ga.max_evaluations = cfg.max_evaluations;
            ga.seed = derive_seed(cfg.seed, r);
            const auto global = genetic_minimize(loss, y0, ga);
            res = polished_nelder_mead(loss, global.x, nm_opts);
            res.evaluations += global.evaluations;
        }
        total_evals += res.evaluations;
        if (!best || res.value < best->value) best = std::move(res);
    }
    if (!best || !std::isfinite(best->value)) {
        throw EstimationError("optimize: objective was not finite at any visited point",
                              std::string(objective_name(cfg.objective)) + " restarts=" + std::to_string(cfg.restarts) +
                                  " evaluations=" + std::to_string(total_evals));
    }

    const HewParams est(std::exp(best->x[0]), std::exp(best->x[1]), std::exp(best->x[2]), std::exp(best->x[3]));
    ObjectiveDiagnostics diag;
    const double value = objective_value(cfg.objective, est, s, &diag);
    const double loglik = -neg_log_likelihood(est, s);
    const auto ic = information_criteria(loglik, 4, s.size());

    FitResult out{cfg.objective, est,   std::nullopt, std::nullopt, loglik,      value,
                  ic.aic,        ic.bic, best->converged, total_evals, diag};
    if (cfg.standard_errors && cfg.objective == ObjectiveKind::MLE) {
        try {
            out.std_errors = standard_errors(numeric_hessian(est, s));
        } catch (const DomainError&) {
            out.std_errors.reset();
        }
        if (out.std_errors) {
            const auto e = est.to_array();
            std::array<Interval, 4> ci{};
            for (std::size_t i = 0; i < 4; ++i) ci[i] = asymptotic_ci(e[i], (*out.std_errors)[i], cfg.ci_level);
            out.ci = ci;
        }
    }
    return out;
}

Matrix4 numeric_hessian(const std::function<double(const Point4&)>& f, const Point4& x, double rel_step) {
    Point4 h{};
    for (std::size_t i = 0; i < 4; ++i) h[i] = rel_step * std::max(std::abs(x[i]), 1e-8);

    auto at = [&](std::size_t i, double si, std::size_t j, double sj) {
        Point4 y = x;
        y[i] += si * h[i];
        y[j] += sj * h[j];
        return f(y);
    };
    const double f0 = f(x);
    Matrix4 H{};
    for (std::size_t i = 0; i < 4; ++i) {
        Point4 up = x, down = x;
        up[i] += h[i];
        down[i] -= h[i];
        H[i][i] = (f(up) - 2.0 * f0 + f(down)) / (h[i] * h[i]);
        for (std::size_t j = i + 1; j < 4; ++j) {
            const double v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4.0 * h[i] * h[j]);
            H[i][j] = v;
            H[j][i] = v;
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (!std::isfinite(H[i][j])) {
                throw DomainError("numeric_hessian: non-finite entry at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
            }
        }
    }
    return H;
}

Matrix4 numeric_hessian(const HewParams& p, const Sample& s, double rel_step) {
    return numeric_hessian(
        [&](const Point4& v) {
            if (!HewParams::admissible(v)) return kInf;
            return neg_log_likelihood(HewParams::from_array(v), s);
        },
        p.to_array(), rel_step);
}

std::optional<std::array<double, 4>> standard_errors(const Matrix4& hessian) {
    Eigen::Matrix4d H;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) H(i, j) = hessian[i][j];
    }
    const Eigen::LLT<Eigen::Matrix4d> llt(H);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Eigen::Matrix4d cov = llt.solve(Eigen::Matrix4d::Identity());
    std::array<double, 4> se{};
    for (int i = 0; i < 4; ++i) {
        if (!(cov(i, i) > 0.0) || !std::isfinite(cov(i, i))) return std::nullopt;
        se[i] = std::sqrt(cov(i, i));
    }
    return se;
}

Interval asymptotic_ci(double estimate, double std_error, double level) {
    if (!(std_error >= 0.0)) throw DomainError("asymptotic_ci: std_error must be >= 0");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("asymptotic_ci: level must lie in (0, 1)");
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 * (1.0 + level));
    return {estimate - z * std_error, estimate + z * std_error};
}

std::string_view model_kind_name(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::HEW: return "HEW";
        case ModelKind::Weibull: return "Weib";
        case ModelKind::TruncatedWeibull: return "tWeib";
        case ModelKind::ExpWeibull: return "expWeib";
    }
    return "?";
}

double log_likelihood(const Model& m, const Sample& s) {
    if (const auto* p = std::get_if<HewParams>(&m)) return -neg_log_likelihood(*p, s);
    double acc = 0.0;
    try {
        for (double x : s.values()) acc += log_pdf(m, x);
    } catch (const DomainError&) {
        return -kInf;
    }
    return std::isnan(acc) ? -kInf : acc;
}

namespace {

ComparisonModel make_comparison(ModelKind kind, double a, double b, double gamma) {
    switch (kind) {
        case ModelKind::Weibull: return Weibull{a, b};
        case ModelKind::TruncatedWeibull: return TruncatedWeibull{a, b, gamma};
        case ModelKind::ExpWeibull: return ExpWeibull{a, b};
        case ModelKind::HEW: break;
    }
    throw DomainError("fit_comparison: HEW is not a comparison model");
}

}  // namespace

ComparisonFit fit_comparison(ModelKind kind, const Sample& s, std::size_t restarts, std::uint64_t seed) {
    if (restarts < 1) throw DomainError("fit_comparison: restarts must be >= 1");
    const double gamma = s.max();
    const auto xs = s.values();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const std::vector<double> start = kind == ModelKind::ExpWeibull ? std::vector<double>{1.0, 1.0}
                                                                    : std::vector<double>{1.0, 1.0 / mean};

    const ObjectiveFn loss = [&](std::span<const double> y) {
        const double a = std::exp(y[0]);
        const double b = std::exp(y[1]);
        if (!std::isfinite(a) || !std::isfinite(b) || a <= 0.0 || b <= 0.0) return kInf;
        const double ll = log_likelihood(to_model(make_comparison(kind, a, b, gamma)), s);
        return std::isfinite(ll) ? -ll : kInf;
    };

    Rng rng(seed);
    std::optional<MinimizeResult> best;
    std::size_t evals = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
        auto res = polished_nelder_mead(loss, jittered_log_start(start, r, rng), {20000, 1e-10, 0.2});
        evals += res.evaluations;
        if (!best || res.value < best->value) best = std::move(res);
    }
    if (!std::isfinite(best->value)) {
        throw EstimationError(std::string("fit_comparison: no finite likelihood for ") +
                              std::string(model_kind_name(kind)));
    }
    const auto model = make_comparison(kind, std::exp(best->x[0]), std::exp(best->x[1]), gamma);
    const double ll = -best->value;
    const auto ic = information_criteria(ll, 2, s.size());
    return {model, ll, ic.aic, ic.bic, best->converged, evals};
}

}  // namespace hew
