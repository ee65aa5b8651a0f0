#include "hew/simd/kernels.hpp"

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "vmath_avx2.hpp"

namespace hew::simd {

namespace {

using namespace avx2;

struct Lanes {
    vd theta, theta_bar, log_theta, k, inv_k, beta, log_alpha, log_norm, tail_power;

    explicit Lanes(const detail::HewCoeffs& c)
        : theta(set1(c.theta)),
          theta_bar(set1(c.theta_bar)),
          log_theta(set1(c.log_theta)),
          k(set1(c.k)),
          inv_k(set1(c.inv_k)),
          beta(set1(c.beta)),
          log_alpha(set1(c.log_alpha)),
          log_norm(set1(c.log_norm)),
          tail_power(set1(c.tail_power)) {}
};

inline vd log_denominator(const Lanes& c, vd u) {
    const vd near = _mm256_sub_pd(log(_mm256_add_pd(c.theta, expm1(u))), u);
    const vd far = log1p(_mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), c.theta_bar), exp(_mm256_sub_pd(_mm256_setzero_pd(), u))));
    return blend(far, near, lt(u, set1(detail::kLogDenomSwitch)));
}

inline vd log_sf_from_u(const Lanes& c, vd u) {
    const vd neg_inv_k = _mm256_sub_pd(_mm256_setzero_pd(), c.inv_k);
    const vd near = _mm256_mul_pd(neg_inv_k, log1p(_mm256_div_pd(expm1(u), c.theta)));
    const vd log_y = _mm256_add_pd(_mm256_sub_pd(u, c.log_theta),
                                   log1p(_mm256_sub_pd(_mm256_setzero_pd(), exp(_mm256_sub_pd(_mm256_setzero_pd(), u)))));
    const vd far = _mm256_mul_pd(neg_inv_k, _mm256_add_pd(log_y, log1p(exp(_mm256_sub_pd(_mm256_setzero_pd(), log_y)))));
    return blend(far, near, lt(u, set1(detail::kLogSfSwitch)));
}

double sum_log_pdf_avx2(const detail::HewCoeffs& c, const double* x,
                                                             std::size_t n) {
    const Lanes l(c);
    vd acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const vd xv = _mm256_loadu_pd(x + i);
        const vd log_x = log(xv);
        const vd z = exp(_mm256_fmadd_pd(l.beta, log_x, l.log_alpha));
        const vd u = _mm256_mul_pd(l.k, z);
        vd r = _mm256_fmadd_pd(_mm256_sub_pd(l.beta, set1(1.0)), log_x, l.log_norm);
        r = _mm256_sub_pd(r, z);
        r = _mm256_fnmadd_pd(l.tail_power, log_denominator(l, u), r);
        acc = _mm256_add_pd(acc, r);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += detail::log_pdf(c, x[i]);
    return total;
}

void cdf_sf_avx2(const detail::HewCoeffs& c, const double* x, double* cdf,
                                                      double* sf, std::size_t n) {
    const Lanes l(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const vd xv = _mm256_loadu_pd(x + i);
        const vd z = exp(_mm256_fmadd_pd(l.beta, log(xv), l.log_alpha));
        vd ls = log_sf_from_u(l, _mm256_mul_pd(l.k, z));
        ls = blend(ls, _mm256_setzero_pd(), le(xv, _mm256_setzero_pd()));
        if (cdf) _mm256_storeu_pd(cdf + i, _mm256_sub_pd(_mm256_setzero_pd(), expm1(ls)));
        if (sf) _mm256_storeu_pd(sf + i, exp(ls));
    }
    for (; i < n; ++i) {
        const double ls = detail::log_sf(c, x[i]);
        if (cdf) cdf[i] = -std::expm1(ls);
        if (sf) sf[i] = std::exp(ls);
    }
}

}  // namespace

const KernelTable& avx2_kernels() noexcept {
    static const KernelTable table{&sum_log_pdf_avx2, &cdf_sf_avx2};
    return table;
}

}  // namespace hew::simd
