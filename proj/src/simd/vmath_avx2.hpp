#pragma once

// Four-lane double-precision exp/log/expm1/log1p for AVX2+FMA.
// Only included from translation units compiled with -mavx2 -mfma.

#include <immintrin.h>

#include <cstdint>

namespace hew::simd::avx2 {

using vd = __m256d;

inline vd set1(double v) { return _mm256_set1_pd(v); }

inline vd blend(vd if_false, vd if_true, vd mask) { return _mm256_blendv_pd(if_false, if_true, mask); }

inline vd lt(vd a, vd b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
inline vd gt(vd a, vd b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
inline vd le(vd a, vd b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
inline vd eq(vd a, vd b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
inline vd is_nan(vd a) { return _mm256_cmp_pd(a, a, _CMP_UNORD_Q); }

inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kLog2e = 1.44269504088896338700e+00;

/// 2^n for integral-valued n in [-1022, 1023].
inline vd pow2_int(vd n) {
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    __m256i bits = _mm256_cvtepi32_epi64(n32);
    bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
    bits = _mm256_slli_epi64(bits, 52);
    return _mm256_castsi256_pd(bits);
}

inline vd exp(vd x) {
    const vd overflow = gt(x, set1(709.782712893384));
    const vd underflow = lt(x, set1(-745.2));
    const vd nan = is_nan(x);
    const vd xc = _mm256_max_pd(_mm256_min_pd(x, set1(709.782712893384)), set1(-745.2));

    const vd n = _mm256_round_pd(_mm256_mul_pd(xc, set1(kLog2e)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    vd r = _mm256_fnmadd_pd(n, set1(kLn2Hi), xc);
    r = _mm256_fnmadd_pd(n, set1(kLn2Lo), r);

    // Taylor series of e^r, |r| <= ln2/2, degree 13.
    vd p = set1(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, set1(0.5));
    p = _mm256_fmadd_pd(p, r, set1(1.0));
    p = _mm256_fmadd_pd(p, r, set1(1.0));

    // Split the scale so that subnormal results stay exact.
    const vd n1 = _mm256_floor_pd(_mm256_mul_pd(n, set1(0.5)));
    const vd n2 = _mm256_sub_pd(n, n1);
    vd y = _mm256_mul_pd(_mm256_mul_pd(p, pow2_int(n1)), pow2_int(n2));

    y = blend(y, set1(__builtin_inf()), overflow);
    y = blend(y, _mm256_setzero_pd(), underflow);
    return blend(y, x, nan);
}

inline vd log(vd x) {
    constexpr double kTwo54 = 18014398509481984.0;
    const vd sub = lt(x, set1(2.2250738585072014e-308));
    const vd xs = blend(x, _mm256_mul_pd(x, set1(kTwo54)), sub);

    const __m256i bits = _mm256_castpd_si256(xs);
    const __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                         _mm256_set1_epi64x(0x3FF0000000000000LL));
    vd m = _mm256_castsi256_pd(mant);
    // biased exponent as a double via the 2^52 trick
    const __m256i ebits = _mm256_or_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x4330000000000000LL));
    vd e = _mm256_sub_pd(_mm256_castsi256_pd(ebits), set1(4503599627370496.0 + 1023.0));
    e = blend(e, _mm256_sub_pd(e, set1(54.0)), sub);

    const vd big = gt(m, set1(1.4142135623730951));
    m = blend(m, _mm256_mul_pd(m, set1(0.5)), big);
    e = blend(e, _mm256_add_pd(e, set1(1.0)), big);

    const vd f = _mm256_sub_pd(m, set1(1.0));
    const vd s = _mm256_div_pd(f, _mm256_add_pd(set1(2.0), f));
    const vd z = _mm256_mul_pd(s, s);
    const vd w = _mm256_mul_pd(z, z);
    vd t1 = _mm256_fmadd_pd(w, set1(1.479819860511658591e-01), set1(1.818357216161805012e-01));
    t1 = _mm256_fmadd_pd(w, t1, set1(2.857142874366239149e-01));
    t1 = _mm256_fmadd_pd(w, t1, set1(6.666666666666735130e-01));
    t1 = _mm256_mul_pd(z, t1);
    vd t2 = _mm256_fmadd_pd(w, set1(1.531383769920937332e-01), set1(2.222219843214978396e-01));
    t2 = _mm256_fmadd_pd(w, t2, set1(3.999999999940941908e-01));
    t2 = _mm256_mul_pd(w, t2);
    const vd R = _mm256_add_pd(t1, t2);
    const vd hfsq = _mm256_mul_pd(set1(0.5), _mm256_mul_pd(f, f));

    // e*ln2_hi - ((hfsq - (s*(hfsq+R) + e*ln2_lo)) - f)
    const vd inner = _mm256_fmadd_pd(e, set1(kLn2Lo), _mm256_mul_pd(s, _mm256_add_pd(hfsq, R)));
    vd y = _mm256_fmsub_pd(e, set1(kLn2Hi), _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));

    y = blend(y, set1(-__builtin_inf()), eq(x, _mm256_setzero_pd()));
    y = blend(y, set1(__builtin_nan("")), lt(x, _mm256_setzero_pd()));
    y = blend(y, x, eq(x, set1(__builtin_inf())));
    return blend(y, x, is_nan(x));
}

inline vd log1p(vd x) {
    const vd u = _mm256_add_pd(set1(1.0), x);
    // log(u) - ((u - 1) - x) / u
    const vd corr = _mm256_div_pd(_mm256_sub_pd(_mm256_sub_pd(u, set1(1.0)), x), u);
    vd y = _mm256_sub_pd(log(u), corr);
    y = blend(y, x, eq(u, set1(1.0)));
    return blend(y, log(u), eq(u, set1(__builtin_inf())));
}

inline vd expm1(vd x) {
    vd p = set1(1.0 / 87178291200.0);
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 6227020800.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, x, set1(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, x, set1(0.5));
    p = _mm256_mul_pd(_mm256_mul_pd(p, x), x);
    const vd small = _mm256_add_pd(x, p);
    const vd large = _mm256_sub_pd(exp(x), set1(1.0));
    const vd abs_x = _mm256_andnot_pd(set1(-0.0), x);
    return blend(large, small, lt(abs_x, set1(0.35)));
}

inline double hsum(vd v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace hew::simd::avx2
