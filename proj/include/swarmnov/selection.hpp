#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swarmnov/random.hpp"

namespace swarmnov::selection {

enum class Policy { kFitness, kRandom, kNovelty, kPmcns, kScalarization };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view name);  // throws ConfigError
bool needs_novelty(Policy p);

// Progressive minimal criterion.
struct PmcnsState {
  double mc = 0.0;
  double percentile = 0.50;
  double smoothing = 0.25;
};

std::vector<double> score_fitness(std::span<const double> fitnesses);

// n independent draws in [0, 1).
std::vector<double> score_random(std::size_t n, Rng& rng);

// Nearest-rank percentile: the ceil(p * n)-th smallest value (the minimum for p = 0).
double nearest_rank_percentile(std::span<const double> values, double p);

// mc <- mc + max(0, (v - mc) * S) with v the P-th percentile fitness. Returns the new mc.
double update_criterion(PmcnsState& state, std::span<const double> fitnesses);

// Novelty where fitness meets state.mc, 0 otherwise.
std::vector<double> score_pmcns(std::span<const double> fitnesses, std::span<const double> novelties,
                                const PmcnsState& state);

// Min-max normalised over the population; a constant component normalises to 0.5.
std::vector<double> min_max_normalise(std::span<const double> values);

// (1 - rho) * fitness' + rho * novelty'
std::vector<double> score_scalarized(std::span<const double> fitnesses, std::span<const double> novelties,
                                     double rho);

}  // namespace swarmnov::selection
