#pragma once

#include <cstddef>
#include <cstdint>

namespace swarmnov::neat {

struct EvolutionConfig {
  std::size_t population_size = 200;
  std::size_t generations = 250;
  double crossover_rate = 0.25;

  // Weight mutation of cloned offspring: each connection is touched with
  // probability mutation_rate; a touched weight is reset uniformly in
  // [-weight_reset_range, weight_reset_range] with probability
  // weight_reset_rate, otherwise perturbed uniformly by +-weight_perturbation.
  double mutation_rate = 0.10;
  double weight_perturbation = 0.5;
  double weight_reset_rate = 0.1;
  double weight_reset_range = 2.0;
  double initial_weight_range = 1.0;

  double add_connection_rate = 0.05;
  double add_node_rate = 0.03;
  int add_connection_attempts = 20;

  double excess_coefficient = 1.0;
  double disjoint_coefficient = 1.0;
  double weight_coefficient = 0.4;
  double initial_threshold = 3.0;
  double threshold_step = 0.1;
  double min_threshold = 0.1;
  std::size_t target_species_min = 8;
  std::size_t target_species_max = 12;

  int stale_generations = 15;
  // Champion copied unchanged for species with more members than this.
  std::size_t elite_species_size = 5;
  double survival_fraction = 0.2;

  // Throws ConfigError.
  void validate() const;
};

}  // namespace swarmnov::neat
