#include <cmath>

#include "hew/simd/kernels.hpp"

namespace hew::simd {

namespace {

double sum_log_pdf_scalar(const detail::HewCoeffs& c, const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += detail::log_pdf(c, x[i]);
    return acc;
}

void cdf_sf_scalar(const detail::HewCoeffs& c, const double* x, double* cdf, double* sf, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ls = detail::log_sf(c, x[i]);
        if (cdf) cdf[i] = -std::expm1(ls);
        if (sf) sf[i] = std::exp(ls);
    }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{&sum_log_pdf_scalar, &cdf_sf_scalar};
    return table;
}

}  // namespace hew::simd
