#include "hew/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hew/detail/hew_math.hpp"

namespace hew {

namespace {

detail::HewCoeffs coeffs(const HewParams& p) {
    return detail::HewCoeffs::make(p.theta(), p.k(), p.beta(), p.alpha());
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

// alpha * x^beta in log space
double cumulative_hazard(double beta, double alpha, double x) {
    return std::exp(std::log(alpha) + beta * std::log(x));
}

}  // namespace

HewParams::HewParams(double theta, double k, double beta, double alpha)
    : theta_(theta), k_(k), beta_(beta), alpha_(alpha) {
    if (!admissible({theta, k, beta, alpha})) {
        throw DomainError("HewParams: all parameters must be finite and > 0 (got theta=" +
                          std::to_string(theta) + ", k=" + std::to_string(k) +
                          ", beta=" + std::to_string(beta) + ", alpha=" + std::to_string(alpha) + ")");
    }
}

bool HewParams::admissible(const std::array<double, size>& v) noexcept {
    for (double c : v) {
        if (!positive(c)) return false;
    }
    return true;
}

double hew_log_pdf(const HewParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("hew_log_pdf: x must be > 0");
    const double r = detail::log_pdf(coeffs(p), x);
    if (std::isnan(r) || r == std::numeric_limits<double>::infinity()) {
        throw DomainError("hew_log_pdf: non-finite log-density");
    }
    return r;
}

double hew_pdf(const HewParams& p, double x) {
    if (std::isnan(x)) throw DomainError("hew_pdf: x is NaN");
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        // limit from the right: alpha * beta * x^(beta-1) / theta
        if (p.beta() < 1.0) return std::numeric_limits<double>::infinity();
        if (p.beta() > 1.0) return 0.0;
        return p.alpha() / p.theta();
    }
    return std::exp(hew_log_pdf(p, x));
}

double hew_sf(const HewParams& p, double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("hew_sf: x must be >= 0");
    return std::exp(detail::log_sf(coeffs(p), x));
}

double hew_cdf(const HewParams& p, double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("hew_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    return -std::expm1(detail::log_sf(coeffs(p), x));
}

double hew_quantile(const HewParams& p, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("hew_quantile: u must lie in (0, 1)");
    // With s = 1-u: k z = ln(1 + theta (s^{-k} - 1)).
    const double log_s = std::log1p(-u);
    const double kz = std::log1p(p.theta() * std::expm1(-p.k() * log_s));
    return std::exp((std::log(kz) - std::log(p.k() * p.alpha())) / p.beta());
}

void validate(const ComparisonModel& m) {
    const bool ok = std::visit(
        overloaded{
            [](const Weibull& w) { return positive(w.beta) && positive(w.alpha); },
            [](const TruncatedWeibull& w) {
                return positive(w.beta) && positive(w.alpha) && positive(w.gamma);
            },
            [](const ExpWeibull& w) { return positive(w.theta) && positive(w.alpha); },
        },
        m);
    if (!ok) throw DomainError(std::string(model_name(m)) + ": parameters must be finite and > 0");
}

double comparison_cdf(const ComparisonModel& m, double x) {
    if (!std::isfinite(x)) throw DomainError("comparison_cdf: x must be finite");
    if (x <= 0.0) return 0.0;
    return std::visit(
        overloaded{
            [x](const Weibull& w) { return -std::expm1(-cumulative_hazard(w.beta, w.alpha, x)); },
            [x](const TruncatedWeibull& w) {
                if (x >= w.gamma) return 1.0;
                return std::expm1(-cumulative_hazard(w.beta, w.alpha, x)) /
                       std::expm1(-cumulative_hazard(w.beta, w.alpha, w.gamma));
            },
            [x](const ExpWeibull& w) {
                return std::exp(w.alpha * std::log(-std::expm1(-std::pow(x, w.theta))));
            },
        },
        m);
}

double comparison_log_pdf(const ComparisonModel& m, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("comparison_log_pdf: x must be > 0");
    return std::visit(
        overloaded{
            [x](const Weibull& w) {
                return std::log(w.alpha * w.beta) + (w.beta - 1.0) * std::log(x) -
                       cumulative_hazard(w.beta, w.alpha, x);
            },
            [x](const TruncatedWeibull& w) {
                if (x > w.gamma) throw DomainError("comparison_log_pdf: x beyond truncation point");
                return std::log(w.alpha * w.beta) + (w.beta - 1.0) * std::log(x) -
                       cumulative_hazard(w.beta, w.alpha, x) -
                       std::log(-std::expm1(-cumulative_hazard(w.beta, w.alpha, w.gamma)));
            },
            [x](const ExpWeibull& w) {
                const double t = std::pow(x, w.theta);
                return std::log(w.alpha * w.theta) + (w.theta - 1.0) * std::log(x) - t +
                       (w.alpha - 1.0) * std::log(-std::expm1(-t));
            },
        },
        m);
}

double comparison_quantile(const ComparisonModel& m, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("comparison_quantile: u must lie in (0, 1)");
    return std::visit(
        overloaded{
            [u](const Weibull& w) { return std::pow(-std::log1p(-u) / w.alpha, 1.0 / w.beta); },
            [u](const TruncatedWeibull& w) {
                const double mass = -std::expm1(-cumulative_hazard(w.beta, w.alpha, w.gamma));
                return std::min(w.gamma, std::pow(-std::log1p(-u * mass) / w.alpha, 1.0 / w.beta));
            },
            [u](const ExpWeibull& w) {
                return std::pow(-std::log1p(-std::pow(u, 1.0 / w.alpha)), 1.0 / w.theta);
            },
        },
        m);
}

std::string_view model_name(const ComparisonModel& m) {
    return std::visit(overloaded{
                          [](const Weibull&) { return std::string_view("Weib"); },
                          [](const TruncatedWeibull&) { return std::string_view("tWeib"); },
                          [](const ExpWeibull&) { return std::string_view("expWeib"); },
                      },
                      m);
}

namespace {

ComparisonModel as_comparison(const Model& m) {
    return std::visit(overloaded{
                          [](const HewParams&) -> ComparisonModel { throw std::logic_error("not a comparison model"); },
                          [](const auto& c) -> ComparisonModel { return c; },
                      },
                      m);
}

}  // namespace

Model to_model(const ComparisonModel& m) {
    return std::visit([](const auto& c) -> Model { return c; }, m);
}

double cdf(const Model& m, double x) {
    if (const auto* p = std::get_if<HewParams>(&m)) return x <= 0.0 ? 0.0 : hew_cdf(*p, x);
    return comparison_cdf(as_comparison(m), x);
}

double sf(const Model& m, double x) {
    if (const auto* p = std::get_if<HewParams>(&m)) return x <= 0.0 ? 1.0 : hew_sf(*p, x);
    if (x <= 0.0) return 1.0;
    return std::visit(
        overloaded{
            [](const HewParams&) { return 1.0; },
            [x](const Weibull& w) { return std::exp(-cumulative_hazard(w.beta, w.alpha, x)); },
            [x](const TruncatedWeibull& w) {
                if (x >= w.gamma) return 0.0;
                const double hx = cumulative_hazard(w.beta, w.alpha, x);
                const double hg = cumulative_hazard(w.beta, w.alpha, w.gamma);
                // (e^{-hx} - e^{-hg}) / (1 - e^{-hg})
                return -std::exp(-hx) * std::expm1(hx - hg) / -std::expm1(-hg);
            },
            [x](const ExpWeibull& w) {
                return -std::expm1(w.alpha * std::log1p(-std::exp(-std::pow(x, w.theta))));
            },
        },
        m);
}

double log_pdf(const Model& m, double x) {
    if (const auto* p = std::get_if<HewParams>(&m)) return hew_log_pdf(*p, x);
    return comparison_log_pdf(as_comparison(m), x);
}

double quantile(const Model& m, double u) {
    if (const auto* p = std::get_if<HewParams>(&m)) return hew_quantile(*p, u);
    return comparison_quantile(as_comparison(m), u);
}

int parameter_count(const Model& m) { return std::holds_alternative<HewParams>(m) ? 4 : 2; }

std::string_view model_name(const Model& m) {
    if (std::holds_alternative<HewParams>(m)) return "HEW";
    return model_name(as_comparison(m));
}

}  // namespace hew
