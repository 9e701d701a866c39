#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "swarmnov/analysis/records.hpp"
#include "swarmnov/experiment/config.hpp"
#include "swarmnov/neat/population.hpp"
#include "swarmnov/novelty.hpp"
#include "swarmnov/random.hpp"
#include "swarmnov/selection.hpp"

namespace swarmnov::experiment {

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_index);
// Shared by every individual of a generation.
std::vector<std::uint64_t> trial_seeds(std::uint64_t run_seed, std::size_t generation, std::size_t trials);

struct GenerationReport {
  analysis::GenerationStats stats;
  std::vector<analysis::IndividualRecord> individuals;
  neat::Genome champion;
  std::vector<novelty::Archive::Entry> archived;  // entries added this generation
};

// One evolutionary run, advanced a generation at a time.
class EvolutionRun {
 public:
  EvolutionRun(const ExperimentConfig& config, std::size_t run_index);
  // Restores a run from checkpoint() plus the archive persisted alongside it.
  // Archive entries from the checkpoint generation onwards are dropped.
  // Throws ConfigError on malformed or inconsistent input.
  EvolutionRun(const ExperimentConfig& config, const nlohmann::json& checkpoint, const novelty::Archive& archive);

  std::size_t generation() const { return population_->generation(); }
  bool finished() const { return generation() >= config_.evolution.generations; }
  std::uint64_t seed() const { return seed_; }
  const novelty::Archive& archive() const { return archive_; }
  const neat::Population& population() const { return *population_; }
  double mc() const { return pmcns_.mc; }

  GenerationReport step(unsigned workers);

  nlohmann::json checkpoint() const;

 private:
  ExperimentConfig config_;
  std::uint64_t seed_ = 0;
  Rng evolution_rng_;
  Rng archive_rng_;
  Rng random_rng_;
  std::optional<neat::Population> population_;
  novelty::Archive archive_;
  selection::PmcnsState pmcns_;
};

}  // namespace swarmnov::experiment
