#pragma once

#include <cstddef>
#include <vector>

#include "swarmnov/neat/genome.hpp"
#include "swarmnov/novelty.hpp"

namespace swarmnov::analysis {

struct GenerationStats {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::size_t species_count = 0;
  std::size_t archive_size = 0;
  double mc = 0.0;  // PMCNS criterion, 0 for other policies
  neat::GenomeId champion_id = 0;
  std::size_t champion_complexity = 0;
};

struct IndividualRecord {
  std::size_t generation = 0;
  neat::GenomeId id = 0;
  std::size_t complexity = 0;
  double fitness = 0.0;
  double score = 0.0;  // selection score
  bool diverged = false;
  std::vector<double> trial_fitnesses;
  novelty::Descriptor descriptor;
};

// Everything persisted for one evolutionary run.
struct RunRecord {
  std::vector<GenerationStats> generations;  // contiguous from 0
  std::vector<IndividualRecord> individuals;
  std::vector<neat::Genome> champions;  // one per generation
  novelty::Archive archive;

  std::vector<double> best_per_generation() const;
};

}  // namespace swarmnov::analysis
