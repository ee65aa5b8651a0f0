#pragma once

// Derivative-free minimizers over unconstrained real vectors.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hew {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct MinimizeResult {
    std::vector<double> x;
    double value;
    bool converged;
    std::size_t evaluations;
};

struct NelderMeadOptions {
    std::size_t max_evaluations = 20000;
    /// Converged once every vertex lies within this max-norm distance of the best one.
    double tolerance = 1e-8;
    double initial_step = 0.2;
};

/// Nelder-Mead simplex with the standard coefficients (1, 2, 1/2, 1/2).
/// Non-finite objective values are treated as +infinity.
MinimizeResult nelder_mead(const ObjectiveFn& f, std::vector<double> start, const NelderMeadOptions& opts = {});

struct GeneticOptions {
    std::size_t population = 0;  // 0 selects 10 * dimension, at least 20
    std::size_t max_evaluations = 20000;
    /// Converged once the population's per-coordinate range is below this.
    double tolerance = 1e-6;
    /// Search box is center +/- radius in every coordinate.
    double radius = 3.0;
    double crossover_rate = 0.8;
    double blend_alpha = 0.5;
    std::size_t elites = 2;
    std::uint64_t seed = 1;
};

/// Real-coded genetic algorithm: tournament selection, BLX-alpha crossover,
/// Gaussian mutation and elitism. Deterministic for a fixed seed.
MinimizeResult genetic_minimize(const ObjectiveFn& f, const std::vector<double>& center, const GeneticOptions& opts);

}  // namespace hew
