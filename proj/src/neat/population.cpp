#include "swarmnov/neat/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swarmnov/errors.hpp"
#include "swarmnov/neat/operators.hpp"

namespace swarmnov::neat {

void EvolutionConfig::validate() const {
  auto rate = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  if (population_size < 2) throw ConfigError("population_size must be at least 2");
  rate(crossover_rate, "crossover_rate");
  rate(mutation_rate, "mutation_rate");
  rate(weight_reset_rate, "weight_reset_rate");
  rate(add_connection_rate, "add_connection_rate");
  rate(add_node_rate, "add_node_rate");
  rate(survival_fraction, "survival_fraction");
  if (initial_threshold <= 0.0) throw ConfigError("initial_threshold must be positive");
  if (target_species_min > target_species_max) throw ConfigError("target_species_min exceeds target_species_max");
  if (stale_generations < 1) throw ConfigError("stale_generations must be positive");
}

std::vector<std::size_t> allocate_offspring(std::span<const double> weights, const std::vector<bool>& eligible,
                                            std::size_t total) {
  const std::size_t n = weights.size();
  std::vector<std::size_t> counts(n, 0);
  if (total == 0 || n == 0) return counts;

  std::vector<double> w(n, 0.0);
  double sum = 0.0;
  std::size_t eligible_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!eligible[i]) continue;
    ++eligible_count;
    w[i] = std::max(0.0, weights[i]);
    sum += w[i];
  }
  if (eligible_count == 0) throw RuntimeFailure("no species eligible for reproduction");
  if (!(sum > 0.0)) {
    for (std::size_t i = 0; i < n; ++i) w[i] = eligible[i] ? 1.0 : 0.0;
    sum = static_cast<double>(eligible_count);
  }

  std::vector<double> remainder(n, 0.0);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double quota = static_cast<double>(total) * w[i] / sum;
    counts[i] = static_cast<std::size_t>(std::floor(quota));
    remainder[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  // Rounding may overshoot by a unit in pathological cases.
  while (assigned > total) {
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (eligible[a] != eligible[b]) return static_cast<bool>(eligible[a]);
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % n) {
    if (!eligible[order[k]]) {
      k = n - 1;
      continue;
    }
    ++counts[order[k]];
    ++assigned;
  }
  return counts;
}

Population::Population(const EvolutionConfig& config, int inputs, int outputs, Rng& rng)
    : config_(config), threshold_(config.initial_threshold), innovations_(inputs + outputs) {
  config_.validate();
  genomes_.reserve(config_.population_size);
  for (std::size_t i = 0; i < config_.population_size; ++i) {
    Genome g = make_initial_genome(inputs, outputs, innovations_, rng, config_.initial_weight_range);
    g.id = next_genome_id_++;
    genomes_.push_back(std::move(g));
  }
}

Population::Population(const EvolutionConfig& config, State state)
    : config_(config),
      genomes_(std::move(state.genomes)),
      species_(std::move(state.species)),
      threshold_(state.threshold),
      innovations_(state.innovations),
      next_genome_id_(state.next_genome_id),
      next_species_id_(state.next_species_id),
      generation_(state.generation) {
  config_.validate();
}

Population::State Population::state() const {
  State s;
  s.genomes = genomes_;
  s.species = species_;
  s.threshold = threshold_;
  s.innovations = innovations_.state();
  s.next_genome_id = next_genome_id_;
  s.next_species_id = next_species_id_;
  s.generation = generation_;
  return s;
}

void Population::speciate() {
  const CompatibilityCoefficients coeff{config_.excess_coefficient, config_.disjoint_coefficient,
                                        config_.weight_coefficient};
  for (auto& s : species_) s.members.clear();
  for (std::size_t i = 0; i < genomes_.size(); ++i) {
    bool placed = false;
    for (auto& s : species_) {
      if (compatibility_distance(genomes_[i], s.representative, coeff) < threshold_) {
        s.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      Species s;
      s.id = next_species_id_++;
      s.representative = genomes_[i];
      s.members.push_back(i);
      s.staleness = -1;  // marks a species founded this generation
      species_.push_back(std::move(s));
    }
  }
  std::erase_if(species_, [](const Species& s) { return s.members.empty(); });
}

Genome Population::reproduce(const Species& species, std::span<const double> scores, Rng& rng) {
  std::vector<std::size_t> pool = species.members;
  std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t keep = static_cast<std::size_t>(std::ceil(config_.survival_fraction * static_cast<double>(pool.size())));
  keep = std::clamp<std::size_t>(keep, std::min<std::size_t>(2, pool.size()), pool.size());
  pool.resize(keep);

  if (pool.size() >= 2 && bernoulli(rng, config_.crossover_rate)) {
    const std::size_t a = uniform_index(rng, pool.size());
    std::size_t b = uniform_index(rng, pool.size() - 1);
    if (b >= a) ++b;
    return crossover(genomes_[pool[a]], scores[pool[a]], genomes_[pool[b]], scores[pool[b]], rng);
  }
  const std::size_t parent = pool[uniform_index(rng, pool.size())];
  return mutate(genomes_[parent], innovations_, config_, rng);
}

void Population::epoch(std::span<const double> scores, Rng& rng) {
  if (scores.size() != genomes_.size()) throw ConfigError("one score per genome required");
  for (double s : scores) {
    if (!std::isfinite(s) || s < 0.0) throw ConfigError("scores must be finite and non-negative");
  }
  innovations_.begin_generation();
  speciate();

  if (species_.size() < config_.target_species_min) {
    threshold_ = std::max(config_.min_threshold, threshold_ - config_.threshold_step);
  } else if (species_.size() > config_.target_species_max) {
    threshold_ += config_.threshold_step;
  }

  const std::size_t champion =
      static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());

  std::vector<double> weights;
  std::vector<bool> eligible;
  for (auto& s : species_) {
    double best = 0.0;
    double sum = 0.0;
    for (auto m : s.members) {
      best = std::max(best, scores[m]);
      sum += scores[m];
    }
    if (s.staleness < 0 || best > s.best_score) {
      s.best_score = best;
      s.staleness = 0;
    } else {
      ++s.staleness;
    }
    s.adjusted_sum = sum / static_cast<double>(s.members.size());
    const bool has_champion = std::find(s.members.begin(), s.members.end(), champion) != s.members.end();
    weights.push_back(s.adjusted_sum);
    eligible.push_back(s.staleness < config_.stale_generations || has_champion);
  }

  std::vector<Genome> next;
  next.reserve(config_.population_size);
  std::vector<std::size_t> elites(species_.size(), 0);
  for (std::size_t k = 0; k < species_.size(); ++k) {
    const auto& s = species_[k];
    if (s.members.size() <= config_.elite_species_size) continue;
    const auto best = *std::max_element(s.members.begin(), s.members.end(), [&](std::size_t a, std::size_t b) {
      return scores[a] < scores[b];
    });
    next.push_back(genomes_[best]);
    elites[k] = 1;
  }

  const auto counts = allocate_offspring(weights, eligible, config_.population_size - next.size());
  for (std::size_t k = 0; k < species_.size(); ++k) {
    species_[k].offspring = counts[k] + elites[k];
    for (std::size_t c = 0; c < counts[k]; ++c) {
      Genome child = reproduce(species_[k], scores, rng);
      child.id = next_genome_id_++;
      next.push_back(std::move(child));
    }
  }

  // Representatives for the next speciation come from this generation.
  // Species left without offspring die out.
  last_speciation_ = species_;
  std::erase_if(species_, [](const Species& s) { return s.offspring == 0; });
  for (auto& s : species_) s.representative = genomes_[s.members[uniform_index(rng, s.members.size())]];

  genomes_ = std::move(next);
  ++generation_;
}

}  // namespace swarmnov::neat
