#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swarmnov/neat/config.hpp"
#include "swarmnov/neat/genome.hpp"
#include "swarmnov/neat/innovation.hpp"
#include "swarmnov/random.hpp"

namespace swarmnov::neat {

struct Species {
  int id = 0;
  Genome representative;
  std::vector<std::size_t> members;  // indices into the scored population
  int staleness = 0;
  double best_score = 0.0;
  double adjusted_sum = 0.0;
  std::size_t offspring = 0;
};

// Splits total slots across species proportionally to weights using largest
// remainders (ties to the lower index). Species with eligible[i] == false get
// nothing. If every eligible weight is zero the slots are spread uniformly
// over the eligible species.
std::vector<std::size_t> allocate_offspring(std::span<const double> weights, const std::vector<bool>& eligible,
                                            std::size_t total);

class Population {
 public:
  struct State {
    std::vector<Genome> genomes;
    std::vector<Species> species;  // representative, id, staleness, best_score are restored
    double threshold = 0.0;
    InnovationTracker::State innovations;
    GenomeId next_genome_id = 1;
    int next_species_id = 1;
    std::size_t generation = 0;
  };

  Population(const EvolutionConfig& config, int inputs, int outputs, Rng& rng);
  Population(const EvolutionConfig& config, State state);

  const std::vector<Genome>& genomes() const { return genomes_; }
  // Speciation of the most recently scored generation, including species
  // that received no offspring.
  const std::vector<Species>& last_speciation() const { return last_speciation_; }
  // Species carried into the next speciation.
  const std::vector<Species>& species() const { return species_; }
  double threshold() const { return threshold_; }
  std::size_t generation() const { return generation_; }
  const EvolutionConfig& config() const { return config_; }
  InnovationTracker& innovations() { return innovations_; }

  // Speciates the current genomes, shares scores within species and replaces
  // the population with the next generation.
  void epoch(std::span<const double> scores, Rng& rng);

  State state() const;

 private:
  void speciate();
  Genome reproduce(const Species& species, std::span<const double> scores, Rng& rng);

  EvolutionConfig config_;
  std::vector<Genome> genomes_;
  std::vector<Species> species_;
  std::vector<Species> last_speciation_;
  double threshold_ = 0.0;
  InnovationTracker innovations_;
  GenomeId next_genome_id_ = 1;
  int next_species_id_ = 1;
  std::size_t generation_ = 0;
};

}  // namespace swarmnov::neat
