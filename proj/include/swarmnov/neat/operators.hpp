#pragma once

#include "swarmnov/neat/config.hpp"
#include "swarmnov/neat/genome.hpp"
#include "swarmnov/neat/innovation.hpp"
#include "swarmnov/random.hpp"

namespace swarmnov::neat {

struct CompatibilityCoefficients {
  double excess = 1.0;
  double disjoint = 1.0;
  double weight = 0.4;
};

// c_e * E / N + c_d * D / N + c_w * mean |w_a - w_b| over matching genes,
// with N the connection count of the larger genome.
double compatibility_distance(const Genome& a, const Genome& b, const CompatibilityCoefficients& c);

// Matching genes are taken from either parent with equal probability;
// disjoint and excess genes come from the higher-scoring parent (a coin flip
// picks it on ties). A gene disabled in either parent stays disabled with
// probability 0.75. The offspring id is left at 0.
Genome crossover(const Genome& parent1, double score1, const Genome& parent2, double score2, Rng& rng);

Genome mutate(Genome genome, InnovationTracker& innovations, const EvolutionConfig& config, Rng& rng);

// Individual mutation steps, exposed for testing.
void mutate_weights(Genome& genome, const EvolutionConfig& config, Rng& rng);
bool mutate_add_connection(Genome& genome, InnovationTracker& innovations, const EvolutionConfig& config,
                           Rng& rng);
bool mutate_add_node(Genome& genome, InnovationTracker& innovations, Rng& rng);
// Splits the given enabled connection.
void split_connection(Genome& genome, int innovation, InnovationTracker& innovations);

}  // namespace swarmnov::neat
