#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hew/sample.hpp"

namespace hew {

/// Malformed input file. `line()` is 1-based, or 0 when not tied to a line.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::size_t line = 0) : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads the first column of a CSV stream. A first line whose first field is
/// not a number is treated as a header; blank lines are ignored. Every other
/// field must be a finite number > 0.
std::vector<double> read_values_csv(std::istream& in);
std::vector<double> read_values_csv(const std::filesystem::path& path);

Sample load_sample(const std::filesystem::path& path);

struct SummaryStats {
    std::size_t n;
    double min;
    double q1;
    double median;
    double mean;
    double q3;
    double max;
    /// Adjusted Fisher-Pearson skewness G1.
    double skewness;
};

/// Quartiles use linear interpolation between order statistics
/// (position (n-1)p, zero-based).
SummaryStats summarize(std::span<const double> values);

/// Published summary of one of the bundled real data sets.
struct ReferenceDataset {
    std::string_view name;
    std::string_view file;
    SummaryStats expected;
};

std::span<const ReferenceDataset> reference_datasets() noexcept;
const ReferenceDataset* find_reference(std::string_view name) noexcept;

/// Empty when `s` agrees with the published summary to its printed
/// precision; otherwise a description of the first mismatch.
std::optional<std::string> check_reference(const SummaryStats& s, const ReferenceDataset& ref);

/// Loads `<dir>/<ref.file>` and verifies it against the published summary.
/// Returns nullopt when the file does not exist; throws InputError when it
/// exists but does not match.
std::optional<Sample> load_reference(const std::filesystem::path& dir, const ReferenceDataset& ref);

}  // namespace hew
