#include "hew/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace hew {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

double order_stat_interp(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<double> read_values_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const std::string_view field = trim(row.substr(0, row.find(',')));
        const auto v = parse_number(field);
        if (!seen_content) {
            seen_content = true;
            if (!v) continue;  // header
        }
        if (!v) throw InputError("line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'", line_no);
        if (!std::isfinite(*v) || *v <= 0.0) {
            throw InputError("line " + std::to_string(line_no) + ": value must be finite and > 0", line_no);
        }
        values.push_back(*v);
    }
    if (values.size() < 2) throw InputError("input must contain at least two observations");
    return values;
}

std::vector<double> read_values_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return read_values_csv(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what(), e.line());
    }
}

Sample load_sample(const std::filesystem::path& path) {
    return Sample(read_values_csv(path), SampleSource::File);
}

SummaryStats summarize(std::span<const double> values) {
    if (values.size() < 3) throw DomainError("summarize: need at least three values");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    const double g1 = m3 / std::pow(m2, 1.5);
    const double skew = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
    return {v.size(), v.front(), order_stat_interp(v, 0.25), order_stat_interp(v, 0.5), mean,
            order_stat_interp(v, 0.75), v.back(), skew};
}

namespace {

constexpr std::array<ReferenceDataset, 3> kReferences{{
    {"bladder", "bladder.csv", {127, 0.08, 3.34, 6.25, 8.82, 11.72, 46.12, 2.08}},
    {"carcinoma", "carcinoma.csv", {194, 1.0, 8.0, 14.0, 18.81, 24.75, 101.0, 2.078}},
    {"carbon", "carbon.csv", {63, 0.39, 2.09, 2.85, 2.74, 3.28, 4.90, -0.198}},
}};

// Half a unit in the last printed place, with a little slack for the
// rounding of values that sit exactly on a half.
double printed_tolerance(double v) {
    for (double scale : {1.0, 10.0, 100.0, 1000.0}) {
        const double r = v * scale;
        if (std::abs(r - std::round(r)) < 1e-9) return 0.6 / scale;
    }
    return 6e-4;
}

}  // namespace

std::span<const ReferenceDataset> reference_datasets() noexcept { return kReferences; }

const ReferenceDataset* find_reference(std::string_view name) noexcept {
    for (const auto& r : kReferences) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

std::optional<std::string> check_reference(const SummaryStats& s, const ReferenceDataset& ref) {
    const auto& e = ref.expected;
    if (s.n != e.n) {
        return "n = " + std::to_string(s.n) + ", expected " + std::to_string(e.n);
    }
    const std::array<std::pair<const char*, std::pair<double, double>>, 7> fields{{
        {"min", {s.min, e.min}},
        {"q1", {s.q1, e.q1}},
        {"median", {s.median, e.median}},
        {"mean", {s.mean, e.mean}},
        {"q3", {s.q3, e.q3}},
        {"max", {s.max, e.max}},
        {"skewness", {s.skewness, e.skewness}},
    }};
    for (const auto& [name, pair] : fields) {
        const auto [got, want] = pair;
        if (std::abs(got - want) > printed_tolerance(want)) {
            std::ostringstream msg;
            msg << name << " = " << got << ", expected " << want;
            return msg.str();
        }
    }
    return std::nullopt;
}

std::optional<Sample> load_reference(const std::filesystem::path& dir, const ReferenceDataset& ref) {
    const auto path = dir / ref.file;
    if (!std::filesystem::exists(path)) return std::nullopt;
    auto values = read_values_csv(path);
    if (auto why = check_reference(summarize(values), ref)) {
        throw InputError(path.string() + " does not match the " + std::string(ref.name) + " reference summary: " + *why);
    }
    return Sample(std::move(values), SampleSource::File);
}

}  // namespace hew
