#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hew/distributions.hpp"

namespace hew {

enum class SampleSource { Simulated, File };

/// Sorted batch of strictly positive observations (at least two).
class Sample {
public:
    /// Sorts `values`; throws DomainError on fewer than two values or any
    /// non-finite or non-positive entry.
    explicit Sample(std::vector<double> values, SampleSource source = SampleSource::File,
                    std::optional<std::uint64_t> seed = std::nullopt);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }
    SampleSource source() const noexcept { return source_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

    bool has_ties() const noexcept;

private:
    std::vector<double> values_;
    SampleSource source_;
    std::optional<std::uint64_t> seed_;
};

/// n >= 1 inverse-transform draws from `m` in generation order.
std::vector<double> draw_model(const Model& m, std::size_t n, std::uint64_t seed);

/// n inverse-transform draws from HEW(p); bit-identical for equal (p, n, seed).
Sample sample_hew(const HewParams& p, std::size_t n, std::uint64_t seed);

/// n inverse-transform draws from any supported model.
Sample sample_model(const Model& m, std::size_t n, std::uint64_t seed);

}  // namespace hew
