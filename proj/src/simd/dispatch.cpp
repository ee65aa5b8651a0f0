#include <atomic>
#include <cstdlib>
#include <string>

#include "hew/simd/kernels.hpp"

namespace hew::simd {

#if !HEW_WITH_AVX2
const KernelTable& avx2_kernels() noexcept { return scalar_kernels(); }
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if HEW_WITH_AVX2
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() {
    Isa best = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    if (const char* env = std::getenv("HEW_SIMD")) {
        try {
            const Isa requested = parse_isa(env);
            if (isa_available(requested)) best = requested;
        } catch (const DomainError&) {
            // unknown value: keep the detected default
        }
    }
    return best;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) noexcept {
    if (isa == Isa::Scalar) return true;
    return cpu_has_avx2();
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (!isa_available(isa)) throw DomainError("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
    current().store(isa, std::memory_order_relaxed);
}

Isa parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2") return Isa::Avx2;
    if (name == "auto") return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    throw DomainError("unknown SIMD variant '" + std::string(name) + "' (expected scalar, avx2 or auto)");
}

const KernelTable& kernels(Isa isa) noexcept { return isa == Isa::Avx2 ? avx2_kernels() : scalar_kernels(); }

double sum_log_pdf(const HewParams& p, std::span<const double> x) {
    const auto c = detail::HewCoeffs::make(p.theta(), p.k(), p.beta(), p.alpha());
    return kernels(active_isa()).sum_log_pdf(c, x.data(), x.size());
}

void cdf_sf(const HewParams& p, std::span<const double> x, std::span<double> cdf, std::span<double> sf) {
    if ((!cdf.empty() && cdf.size() != x.size()) || (!sf.empty() && sf.size() != x.size())) {
        throw DomainError("cdf_sf: output spans must match the input length");
    }
    const auto c = detail::HewCoeffs::make(p.theta(), p.k(), p.beta(), p.alpha());
    kernels(active_isa()).cdf_sf(c, x.data(), cdf.empty() ? nullptr : cdf.data(), sf.empty() ? nullptr : sf.data(),
                                 x.size());
}

}  // namespace hew::simd
