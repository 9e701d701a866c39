#include "swarmnov/selection.hpp"

#include <algorithm>
#include <cmath>

#include "swarmnov/errors.hpp"

namespace swarmnov::selection {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::kFitness: return "fitness";
    case Policy::kRandom: return "random";
    case Policy::kNovelty: return "novelty";
    case Policy::kPmcns: return "pmcns";
    case Policy::kScalarization: return "scalarization";
  }
  return "fitness";
}

Policy parse_policy(std::string_view name) {
  for (auto p : {Policy::kFitness, Policy::kRandom, Policy::kNovelty, Policy::kPmcns, Policy::kScalarization}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("unknown selection policy '" + std::string(name) + "'");
}

bool needs_novelty(Policy p) {
  return p == Policy::kNovelty || p == Policy::kPmcns || p == Policy::kScalarization;
}

std::vector<double> score_fitness(std::span<const double> fitnesses) {
  return {fitnesses.begin(), fitnesses.end()};
}

std::vector<double> score_random(std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (auto& v : out) v = uniform01(rng);
  return out;
}

double nearest_rank_percentile(std::span<const double> values, double p) {
  if (values.empty()) throw ConfigError("percentile of an empty population");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double update_criterion(PmcnsState& state, std::span<const double> fitnesses) {
  const double v = nearest_rank_percentile(fitnesses, state.percentile);
  state.mc += std::max(0.0, (v - state.mc) * state.smoothing);
  return state.mc;
}

std::vector<double> score_pmcns(std::span<const double> fitnesses, std::span<const double> novelties,
                                const PmcnsState& state) {
  if (fitnesses.size() != novelties.size()) throw ConfigError("fitness/novelty length mismatch");
  std::vector<double> out(fitnesses.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fitnesses[i] >= state.mc ? novelties[i] : 0.0;
  return out;
}

std::vector<double> min_max_normalise(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.5);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / (*hi - *lo);
  return out;
}

std::vector<double> score_scalarized(std::span<const double> fitnesses, std::span<const double> novelties,
                                     double rho) {
  if (fitnesses.size() != novelties.size()) throw ConfigError("fitness/novelty length mismatch");
  if (fitnesses.empty()) throw ConfigError("scalarization of an empty population");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  const auto f = min_max_normalise(fitnesses);
  const auto n = min_max_normalise(novelties);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - rho) * f[i] + rho * n[i];
  return out;
}

}  // namespace swarmnov::selection
