#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace hew {

/// Thrown when an argument lies outside the domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when an estimation procedure cannot produce a finite answer.
class EstimationError : public std::runtime_error {
public:
    EstimationError(const std::string& what, std::string diagnostics = {})
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

/// Parameters of the Harris extended Weibull distribution.
///
/// theta and k are the Harris shape parameters, beta is the Weibull shape and
/// alpha the Weibull rate. All four must be strictly positive; theta > 1 is
/// allowed.
class HewParams {
public:
    static constexpr std::size_t size = 4;

    HewParams(double theta, double k, double beta, double alpha);

    static HewParams from_array(const std::array<double, size>& v) {
        return {v[0], v[1], v[2], v[3]};
    }

    double theta() const noexcept { return theta_; }
    double k() const noexcept { return k_; }
    double beta() const noexcept { return beta_; }
    double alpha() const noexcept { return alpha_; }
    double theta_bar() const noexcept { return 1.0 - theta_; }

    std::array<double, size> to_array() const noexcept { return {theta_, k_, beta_, alpha_}; }

    /// True when every component of `v` is finite and strictly positive.
    static bool admissible(const std::array<double, size>& v) noexcept;

    friend bool operator==(const HewParams&, const HewParams&) = default;

private:
    double theta_;
    double k_;
    double beta_;
    double alpha_;
};

inline constexpr std::array<const char*, HewParams::size> kParamNames{"theta", "k", "beta", "alpha"};

}  // namespace hew
