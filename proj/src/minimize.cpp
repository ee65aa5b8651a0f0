#include "hew/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hew/params.hpp"
#include "hew/rng.hpp"

namespace hew {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const ObjectiveFn& f, std::span<const double> x, std::size_t& evals) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? kInf : v;
}

}  // namespace

MinimizeResult nelder_mead(const ObjectiveFn& f, std::vector<double> start, const NelderMeadOptions& opts) {
    const std::size_t dim = start.size();
    if (dim == 0) throw DomainError("nelder_mead: empty starting point");
    std::size_t evals = 0;

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += opts.initial_step;
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = safe_eval(f, simplex[i], evals);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    bool converged = false;

    auto point_along = [&](double t, const std::vector<double>& from, std::vector<double>& out) {
        // centroid + t * (centroid - from)
        for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (centroid[j] - from[j]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        if (std::isfinite(values[best]) && diameter < opts.tolerance) {
            converged = true;
            break;
        }
        if (evals >= opts.max_evaluations) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
        }
        for (auto& c : centroid) c /= static_cast<double>(dim);

        point_along(1.0, simplex[worst], trial);
        const double fr = safe_eval(f, trial, evals);

        if (fr < values[best]) {
            point_along(2.0, simplex[worst], trial2);
            const double fe = safe_eval(f, trial2, evals);
            if (fe < fr) {
                simplex[worst] = trial2;
                values[worst] = fe;
            } else {
                simplex[worst] = trial;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = fr;
            continue;
        }

        bool shrink = false;
        if (fr < values[worst]) {
            point_along(0.5, simplex[worst], trial2);  // outside contraction
            const double fc = safe_eval(f, trial2, evals);
            if (fc <= fr) {
                simplex[worst] = trial2;
                values[worst] = fc;
            } else {
                shrink = true;
            }
        } else {
            point_along(-0.5, simplex[worst], trial2);  // inside contraction
            const double fc = safe_eval(f, trial2, evals);
            if (fc < values[worst]) {
                simplex[worst] = trial2;
                values[worst] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 0; i <= dim; ++i) {
                if (i == best) continue;
                for (std::size_t j = 0; j < dim; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                values[i] = safe_eval(f, simplex[i], evals);
            }
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best = static_cast<std::size_t>(best_it - values.begin());
    return {simplex[best], values[best], converged, evals};
}

MinimizeResult genetic_minimize(const ObjectiveFn& f, const std::vector<double>& center, const GeneticOptions& opts) {
    const std::size_t dim = center.size();
    if (dim == 0) throw DomainError("genetic_minimize: empty center");
    const std::size_t pop_size = opts.population ? opts.population : std::max<std::size_t>(20, 10 * dim);
    if (pop_size < opts.elites + 2) throw DomainError("genetic_minimize: population too small");

    Rng rng(opts.seed);
    std::size_t evals = 0;
    std::vector<double> lower(dim), upper(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        lower[j] = center[j] - opts.radius;
        upper[j] = center[j] + opts.radius;
    }

    std::vector<std::vector<double>> pop(pop_size, std::vector<double>(dim));
    pop[0] = center;
    for (std::size_t i = 1; i < pop_size; ++i) {
        for (std::size_t j = 0; j < dim; ++j) pop[i][j] = rng.uniform(lower[j], upper[j]);
    }
    std::vector<double> fitness(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) fitness[i] = safe_eval(f, pop[i], evals);

    auto tournament = [&]() -> const std::vector<double>& {
        std::size_t best = rng.below(pop_size);
        for (int t = 1; t < 3; ++t) {
            const std::size_t c = rng.below(pop_size);
            if (fitness[c] < fitness[best]) best = c;
        }
        return pop[best];
    };

    const double mutation_rate = 1.0 / static_cast<double>(dim);
    bool converged = false;
    std::vector<std::size_t> order(pop_size);
    std::size_t generation = 0;

    while (evals + pop_size <= opts.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });

        double spread = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double lo = kInf, hi = -kInf;
            for (const auto& ind : pop) {
                lo = std::min(lo, ind[j]);
                hi = std::max(hi, ind[j]);
            }
            spread = std::max(spread, hi - lo);
        }
        if (spread < opts.tolerance) {
            converged = true;
            break;
        }

        // Mutation scale decays so late generations refine around the elite.
        const double sigma = 0.1 * opts.radius / std::sqrt(1.0 + static_cast<double>(generation) / 10.0);
        std::vector<std::vector<double>> next;
        std::vector<double> next_fitness;
        next.reserve(pop_size);
        next_fitness.reserve(pop_size);
        for (std::size_t e = 0; e < opts.elites; ++e) {
            next.push_back(pop[order[e]]);
            next_fitness.push_back(fitness[order[e]]);
        }
        while (next.size() < pop_size) {
            const auto& a = tournament();
            const auto& b = tournament();
            std::vector<double> child(dim);
            const bool cross = rng.uniform() < opts.crossover_rate;
            for (std::size_t j = 0; j < dim; ++j) {
                if (cross) {
                    const double lo = std::min(a[j], b[j]);
                    const double hi = std::max(a[j], b[j]);
                    const double ext = opts.blend_alpha * (hi - lo);
                    child[j] = rng.uniform(lo - ext, hi + ext);
                } else {
                    child[j] = a[j];
                }
                if (rng.uniform() < mutation_rate) child[j] += sigma * rng.normal();
                child[j] = std::clamp(child[j], lower[j], upper[j]);
            }
            next_fitness.push_back(safe_eval(f, child, evals));
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        fitness = std::move(next_fitness);
        ++generation;
    }

    const auto best_it = std::min_element(fitness.begin(), fitness.end());
    const auto best = static_cast<std::size_t>(best_it - fitness.begin());
    return {pop[best], fitness[best], converged, evals};
}

}  // namespace hew
