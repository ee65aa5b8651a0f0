#pragma once

// Reference evaluators for the test suites. Everything here follows the
// textbook closed forms literally, in 50-digit arithmetic, and shares no code
// with the library's numerically stabilized paths.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

struct Params {
    double theta, k, beta, alpha;
};

inline Big big_log_pdf(const Params& p, double xd) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    const Big t = p.theta, k = p.k, b = p.beta, a = p.alpha, x = xd;
    const Big z = a * pow(x, b);
    return log(t) / k + log(a) + log(b) + (b - 1) * log(x) - z - (k + 1) / k * log(1 - (1 - t) * exp(-k * z));
}

inline Big big_sf(const Params& p, double xd) {
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    const Big t = p.theta, k = p.k, b = p.beta, a = p.alpha, x = xd;
    const Big e = exp(-k * a * pow(x, b));
    return pow(t * e / (1 - (1 - t) * e), 1 / k);
}

inline Big big_cdf(const Params& p, double x) { return 1 - big_sf(p, x); }

inline double log_pdf(const Params& p, double x) { return static_cast<double>(big_log_pdf(p, x)); }
inline double cdf(const Params& p, double x) { return static_cast<double>(big_cdf(p, x)); }
inline double sf(const Params& p, double x) { return static_cast<double>(big_sf(p, x)); }

/// Root of cdf(x) = u by bisection on a bracket grown from [lo, hi].
inline double quantile_by_bisection(const Params& p, double u, double lo = 1e-300, double hi = 1.0) {
    const Big target = u;
    while (big_cdf(p, hi) < target) hi *= 2.0;
    for (int it = 0; it < 2000 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (big_cdf(p, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Integral of the density over (a, b) by adaptive Gauss-Kronrod in double,
/// with the integrand from the literal long-double formula.
inline double integrate_pdf(const Params& p, double a, double b) {
    auto f = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        const long double t = p.theta, k = p.k, be = p.beta, al = p.alpha, xl = x;
        const long double z = al * std::pow(xl, be);
        const long double lf = std::log(t) / k + std::log(al) + std::log(be) + (be - 1) * std::log(xl) - z -
                               (k + 1) / k * std::log(1 - (1 - t) * std::exp(-k * z));
        return static_cast<double>(std::exp(lf));
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13, &err);
}

// Objective re-summations straight from their definitions, on exact cdf values.

inline std::vector<Big> big_cdfs(const Params& p, std::span<const double> sorted) {
    std::vector<Big> out;
    for (double x : sorted) out.push_back(big_cdf(p, x));
    return out;
}

inline double ols(const Params& p, std::span<const double> x) {
    const auto F = big_cdfs(p, x);
    const Big n = static_cast<double>(x.size());
    Big acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Big d = F[i] - Big(static_cast<double>(i + 1)) / (n + 1);
        acc += d * d;
    }
    return static_cast<double>(acc);
}

inline double wls(const Params& p, std::span<const double> x) {
    const auto F = big_cdfs(p, x);
    const Big n = static_cast<double>(x.size());
    Big acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Big r = static_cast<double>(i + 1);
        const Big w = (n + 1) * (n + 1) * (n + 2) / (r * (n - r + 1));
        const Big d = F[i] - r / (n + 1);
        acc += w * d * d;
    }
    return static_cast<double>(acc);
}

/// Mean log spacing over the grid 0, F_1, ..., F_n, 1 (distinct points only).
inline double mps(const Params& p, std::span<const double> x) {
    using boost::multiprecision::log;
    std::vector<Big> grid{Big(0)};
    for (const auto& f : big_cdfs(p, x)) grid.push_back(f);
    grid.push_back(Big(1));
    Big acc = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) acc += log(grid[i] - grid[i - 1]);
    return static_cast<double>(acc / Big(static_cast<double>(x.size() + 1)));
}

inline double ad(const Params& p, std::span<const double> x) {
    using boost::multiprecision::log;
    const auto F = big_cdfs(p, x);
    const std::size_t n = x.size();
    Big acc = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        acc += Big(static_cast<double>(2 * i - 1)) * log(F[i - 1] * (1 - F[n - i]));
    }
    return static_cast<double>(-Big(static_cast<double>(n)) - acc / Big(static_cast<double>(n)));
}

inline double cvm(const Params& p, std::span<const double> x) {
    const auto F = big_cdfs(p, x);
    const std::size_t n = x.size();
    Big acc = Big(1) / Big(static_cast<double>(12 * n));
    for (std::size_t i = 1; i <= n; ++i) {
        const Big d = F[i - 1] - Big(static_cast<double>(2 * i - 1)) / Big(static_cast<double>(2 * n));
        acc += d * d;
    }
    return static_cast<double>(acc);
}

/// Kolmogorov distance by comparing against the ecdf on both sides of every jump, O(n^2).
inline double ks_brute(std::span<const double> cdf_sorted) {
    const std::size_t n = cdf_sorted.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t below = 0, at_or_below = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (cdf_sorted[j] < cdf_sorted[i]) ++below;
            if (cdf_sorted[j] <= cdf_sorted[i]) ++at_or_below;
        }
        d = std::max(d, std::abs(static_cast<double>(at_or_below) / n - cdf_sorted[i]));
        d = std::max(d, std::abs(cdf_sorted[i] - static_cast<double>(below) / n));
    }
    return d;
}

}  // namespace oracle
