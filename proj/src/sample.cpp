#include "hew/sample.hpp"

#include <algorithm>
#include <cmath>

#include "hew/rng.hpp"

namespace hew {

Sample::Sample(std::vector<double> values, SampleSource source, std::optional<std::uint64_t> seed)
    : values_(std::move(values)), source_(source), seed_(seed) {
    if (values_.size() < 2) throw DomainError("Sample: at least two observations are required");
    for (double v : values_) {
        if (!std::isfinite(v) || v <= 0.0) throw DomainError("Sample: observations must be finite and > 0");
    }
    std::sort(values_.begin(), values_.end());
}

bool Sample::has_ties() const noexcept {
    return std::adjacent_find(values_.begin(), values_.end()) != values_.end();
}

std::vector<double> draw_model(const Model& m, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("draw_model: n must be >= 1");
    Rng rng(seed);
    std::vector<double> draws(n);
    for (auto& d : draws) d = quantile(m, rng.uniform());
    return draws;
}

Sample sample_model(const Model& m, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw DomainError("sample: n must be >= 2");
    return Sample(draw_model(m, n, seed), SampleSource::Simulated, seed);
}

Sample sample_hew(const HewParams& p, std::size_t n, std::uint64_t seed) { return sample_model(p, n, seed); }

}  // namespace hew
