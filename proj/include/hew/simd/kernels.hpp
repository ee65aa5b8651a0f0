#pragma once

// Batch evaluation kernels for the HEW distribution.
//
// Every kernel exists as a scalar reference implementation and, on x86-64,
// as an AVX2+FMA variant. The variant is picked once at runtime from the CPU
// features; HEW_SIMD=scalar|avx2 in the environment or set_isa() overrides
// the choice. Both variants agree to a few ulp per element.

#include <cstddef>
#include <span>
#include <string_view>

#include "hew/detail/hew_math.hpp"
#include "hew/params.hpp"

namespace hew::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the running CPU and the build support `isa`.
bool isa_available(Isa isa) noexcept;

/// The instruction set currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Select an instruction set; throws DomainError when it is unavailable.
void set_isa(Isa isa);

/// Parses "scalar", "avx2" or "auto".
Isa parse_isa(std::string_view name);

/// Signatures shared by every variant.
struct KernelTable {
    /// Sum of ln f(x_i).
    double (*sum_log_pdf)(const detail::HewCoeffs&, const double* x, std::size_t n);
    /// F(x_i) and S(x_i); either output pointer may be null.
    void (*cdf_sf)(const detail::HewCoeffs&, const double* x, double* cdf, double* sf, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
/// Only meaningful when isa_available(Isa::Avx2).
const KernelTable& avx2_kernels() noexcept;
const KernelTable& kernels(Isa isa) noexcept;

// Dispatching conveniences.

double sum_log_pdf(const HewParams& p, std::span<const double> x);

void cdf_sf(const HewParams& p, std::span<const double> x, std::span<double> cdf, std::span<double> sf);

}  // namespace hew::simd
