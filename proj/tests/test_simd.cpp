#include <doctest.h>

#include <cmath>
#include <vector>

#include "hew/rng.hpp"
#include "hew/simd/kernels.hpp"

using namespace hew;
using namespace hew::simd;

namespace {

bool close(double a, double b, double rel) {
    if (a == b) return true;
    if (std::isnan(a) || std::isnan(b)) return false;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) || std::abs(a - b) <= 1e-300;
}

struct Case {
    HewParams p;
    std::vector<double> x;
};

// Parameter sets spanning both branches of every stable formula, with
// inputs from the far left tail to beyond where the survival underflows.
std::vector<Case> cases() {
    std::vector<Case> out;
    Rng rng(2024);
    for (int t = 0; t < 60; ++t) {
        const HewParams p(std::exp(rng.uniform(-4, 4)), std::exp(rng.uniform(-3, 2.5)), std::exp(rng.uniform(-1.5, 2.5)),
                          std::exp(rng.uniform(-3, 2)));
        Case c{p, {}};
        const std::size_t n = 1 + rng.below(67);
        for (std::size_t i = 0; i < n; ++i) c.x.push_back(std::exp(rng.uniform(-12, 4)));
        out.push_back(std::move(c));
    }
    out.push_back({HewParams{0.1, 0.13, 10, 1}, {1e-300, 1e-20, 0.3, 0.8, 0.999, 1.0, 1.2, 1.5, 2.0, 3.0, 5.0}});
    out.push_back({HewParams{14.23, 1.0, 1.8, 0.43}, {0.39, 1.0, 2.09, 2.85, 3.28, 4.9, 40.0}});
    return out;
}

}  // namespace

TEST_CASE("ISA names and parsing") {
    CHECK(parse_isa("scalar") == Isa::Scalar);
    CHECK(parse_isa("avx2") == Isa::Avx2);
    CHECK(isa_available(parse_isa("auto")));
    CHECK_THROWS_AS(parse_isa("sse9"), DomainError);
    CHECK(isa_name(Isa::Scalar) == "scalar");
    CHECK(isa_available(Isa::Scalar));
}

TEST_CASE("set_isa switches the dispatching entry points") {
    const Isa before = active_isa();
    set_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    const HewParams p{0.5, 2.0, 1.5, 0.7};
    const std::vector<double> x{0.1, 0.5, 1.0, 2.0, 3.0};
    const auto c = detail::HewCoeffs::make(p.theta(), p.k(), p.beta(), p.alpha());
    CHECK(sum_log_pdf(p, x) == scalar_kernels().sum_log_pdf(c, x.data(), x.size()));
    if (!isa_available(Isa::Avx2)) CHECK_THROWS_AS(set_isa(Isa::Avx2), DomainError);
    set_isa(before);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
    if (!isa_available(Isa::Avx2)) {
        MESSAGE("AVX2 not available on this machine; equivalence not exercised");
        return;
    }
    const auto& ref = scalar_kernels();
    const auto& vec = avx2_kernels();
    for (const auto& c : cases()) {
        const auto k = detail::HewCoeffs::make(c.p.theta(), c.p.k(), c.p.beta(), c.p.alpha());
        const std::size_t n = c.x.size();
        std::vector<double> f1(n), s1(n), f2(n), s2(n);
        ref.cdf_sf(k, c.x.data(), f1.data(), s1.data(), n);
        vec.cdf_sf(k, c.x.data(), f2.data(), s2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            INFO("x = " << c.x[i] << " theta=" << c.p.theta() << " k=" << c.p.k() << " beta=" << c.p.beta()
                        << " alpha=" << c.p.alpha());
            CHECK(close(f1[i], f2[i], 1e-13));
            // exp amplifies an ulp in ln S by |ln S|
            const double cond = std::max(1.0, std::abs(std::log(s1[i])));
            CHECK(close(s1[i], s2[i], 1e-13 * cond));
        }
        const double a = ref.sum_log_pdf(k, c.x.data(), n);
        const double b = vec.sum_log_pdf(k, c.x.data(), n);
        double scale = 0.0;
        for (double x : c.x) scale += std::abs(detail::log_pdf(k, x));
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, scale));
    }
}

TEST_CASE("kernels accept a null output and lengths that are not a multiple of the vector width") {
    const HewParams p{2.0, 0.5, 3.0, 0.2};
    const auto k = detail::HewCoeffs::make(p.theta(), p.k(), p.beta(), p.alpha());
    for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
        if (!isa_available(isa)) continue;
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 9u}) {
            std::vector<double> x(n), f(n, -1.0), s(n, -1.0);
            for (std::size_t i = 0; i < n; ++i) x[i] = 0.3 + 0.4 * i;
            kernels(isa).cdf_sf(k, x.data(), f.data(), nullptr, n);
            kernels(isa).cdf_sf(k, x.data(), nullptr, s.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(f[i] + s[i] == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("dispatching cdf_sf checks span lengths") {
    const HewParams p{1, 1, 1, 1};
    std::vector<double> x{1.0, 2.0}, out(3);
    CHECK_THROWS_AS(cdf_sf(p, x, out, {}), DomainError);
}
