#include "hew/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hew/simd/kernels.hpp"

namespace hew {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scratch {
    std::vector<double> cdf;
    std::vector<double> sf;
};

// Per-thread buffers; objectives are evaluated many times per fit.
Scratch& scratch(std::size_t n) {
    thread_local Scratch s;
    s.cdf.resize(n);
    s.sf.resize(n);
    return s;
}

}  // namespace

std::string_view objective_name(ObjectiveKind kind) noexcept {
    switch (kind) {
        case ObjectiveKind::MLE: return "MLE";
        case ObjectiveKind::OLS: return "OLS";
        case ObjectiveKind::WLS: return "WLS";
        case ObjectiveKind::MPS: return "MPS";
        case ObjectiveKind::AD: return "AD";
        case ObjectiveKind::CvM: return "CvM";
    }
    return "?";
}

ObjectiveKind parse_objective(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "mle") return ObjectiveKind::MLE;
    if (lower == "ols") return ObjectiveKind::OLS;
    if (lower == "wls") return ObjectiveKind::WLS;
    if (lower == "mps") return ObjectiveKind::MPS;
    if (lower == "ad") return ObjectiveKind::AD;
    if (lower == "cvm") return ObjectiveKind::CvM;
    throw DomainError("unknown estimation method '" + std::string(name) + "'");
}

PlottingMoments plotting_moments(std::size_t i, std::size_t n) {
    if (i < 1 || i > n) throw DomainError("plotting_moments: rank must satisfy 1 <= i <= n");
    const double di = static_cast<double>(i);
    const double dn = static_cast<double>(n);
    return {di / (dn + 1.0), di * (dn - di + 1.0) / ((dn + 1.0) * (dn + 1.0) * (dn + 2.0))};
}

double wls_weight(std::size_t i, std::size_t n) {
    if (i < 1 || i > n) throw DomainError("wls_weight: rank must satisfy 1 <= i <= n");
    const double di = static_cast<double>(i);
    const double dn = static_cast<double>(n);
    return (dn + 1.0) * (dn + 1.0) * (dn + 2.0) / (di * (dn - di + 1.0));
}

double neg_log_likelihood(const HewParams& p, const Sample& s) {
    const double ll = simd::sum_log_pdf(p, s.values());
    if (!std::isfinite(ll)) return kInf;
    return -ll;
}

double ols_from_cdf(std::span<const double> cdf) {
    const std::size_t n = cdf.size();
    const double inv = 1.0 / (static_cast<double>(n) + 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = cdf[i] - static_cast<double>(i + 1) * inv;
        acc += d * d;
    }
    return acc;
}

double wls_from_cdf(std::span<const double> cdf) {
    const std::size_t n = cdf.size();
    const double inv = 1.0 / (static_cast<double>(n) + 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = cdf[i] - static_cast<double>(i + 1) * inv;
        acc += wls_weight(i + 1, n) * d * d;
    }
    return acc;
}

double ad_from_cdf(std::span<const double> cdf, std::span<const double> sf, ObjectiveDiagnostics* diag) {
    const std::size_t n = cdf.size();
    constexpr double lo = kAdClampEpsilon;
    constexpr double hi = 1.0 - kAdClampEpsilon;
    auto clamp = [&](double v) {
        if (v < lo || v > hi) {
            if (diag) ++diag->clamped_cdf;
            return std::clamp(v, lo, hi);
        }
        return v;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // F(x_{i:n}) and 1 - F(x_{(n+1-i):n})
        const double f = clamp(cdf[i]);
        const double s = clamp(sf[n - 1 - i]);
        acc += static_cast<double>(2 * i + 1) * (std::log(f) + std::log(s));
    }
    const double dn = static_cast<double>(n);
    return -dn - acc / dn;
}

double cvm_from_cdf(std::span<const double> cdf) {
    const std::size_t n = cdf.size();
    const double dn = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = cdf[i] - static_cast<double>(2 * i + 1) / (2.0 * dn);
        acc += d * d;
    }
    return 1.0 / (12.0 * dn) + acc;
}

double ols_objective(const HewParams& p, const Sample& s) {
    auto& buf = scratch(s.size());
    simd::cdf_sf(p, s.values(), buf.cdf, {});
    return ols_from_cdf(buf.cdf);
}

double wls_objective(const HewParams& p, const Sample& s) {
    auto& buf = scratch(s.size());
    simd::cdf_sf(p, s.values(), buf.cdf, {});
    return wls_from_cdf(buf.cdf);
}

double mps_from_cdf(std::span<const double> cdf, std::span<const double> sf) {
    const std::size_t n = cdf.size();
    double acc = std::log(cdf[0]);
    for (std::size_t i = 1; i < n; ++i) acc += std::log(cdf[i] - cdf[i - 1]);
    acc += std::log(sf[n - 1]);
    const double h = acc / (static_cast<double>(n) + 1.0);
    return std::isnan(h) ? -kInf : h;
}

double mps_log_objective(const HewParams& p, const Sample& s, ObjectiveDiagnostics* diag) {
    const std::size_t n = s.size();
    auto& buf = scratch(n);
    simd::cdf_sf(p, s.values(), buf.cdf, buf.sf);
    if (!s.has_ties()) return mps_from_cdf(buf.cdf, buf.sf);
    const auto x = s.values();
    const auto coeffs = detail::HewCoeffs::make(p.theta(), p.k(), p.beta(), p.alpha());

    double acc = std::log(buf.cdf[0]);
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] == x[i - 1]) {
            if (diag) ++diag->tied_spacings;
            acc += detail::log_pdf(coeffs, x[i]);
            continue;
        }
        acc += std::log(buf.cdf[i] - buf.cdf[i - 1]);
    }
    acc += std::log(buf.sf[n - 1]);
    const double h = acc / (static_cast<double>(n) + 1.0);
    return std::isnan(h) ? -kInf : h;
}

double ad_objective(const HewParams& p, const Sample& s, ObjectiveDiagnostics* diag) {
    auto& buf = scratch(s.size());
    simd::cdf_sf(p, s.values(), buf.cdf, buf.sf);
    return ad_from_cdf(buf.cdf, buf.sf, diag);
}

double cvm_objective(const HewParams& p, const Sample& s) {
    auto& buf = scratch(s.size());
    simd::cdf_sf(p, s.values(), buf.cdf, {});
    return cvm_from_cdf(buf.cdf);
}

double objective_value(ObjectiveKind kind, const HewParams& p, const Sample& s, ObjectiveDiagnostics* diag) {
    switch (kind) {
        case ObjectiveKind::MLE: return -neg_log_likelihood(p, s);
        case ObjectiveKind::OLS: return ols_objective(p, s);
        case ObjectiveKind::WLS: return wls_objective(p, s);
        case ObjectiveKind::MPS: return mps_log_objective(p, s, diag);
        case ObjectiveKind::AD: return ad_objective(p, s, diag);
        case ObjectiveKind::CvM: return cvm_objective(p, s);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace hew
