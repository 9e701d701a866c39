#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarmnov/neat/genome.hpp"
#include "swarmnov/neat/network.hpp"
#include "swarmnov/novelty.hpp"
#include "swarmnov/sim/trajectory_log.hpp"
#include "swarmnov/tasks/metrics.hpp"
#include "swarmnov/tasks/task.hpp"

namespace swarmnov::tasks {

struct EvaluationResult {
  double fitness = 0.0;
  novelty::Descriptor descriptor;
  std::vector<double> trial_fitnesses;
  std::vector<novelty::Descriptor> trial_descriptors;
  bool diverged = false;
};

struct TrialOutcome {
  TrialMetrics metrics;
  bool diverged = false;
};

// Runs one trial of the homogeneous swarm, every robot driven by its own
// state of the same network.
TrialOutcome run_trial(const neat::Network& network, const TaskConfig& config, std::uint64_t trial_seed,
                       sim::TrajectoryLog* log = nullptr);

double trial_fitness(const TrialMetrics& metrics, const TaskConfig& config);
novelty::Descriptor trial_descriptor(const TrialMetrics& metrics, const TaskConfig& config);
// Harmonic mean for aggregation, arithmetic mean for resource sharing.
double combine_trials(std::span<const double> fitnesses, Task task);

EvaluationResult evaluate(const neat::Genome& genome, const TaskConfig& config,
                          std::span<const std::uint64_t> trial_seeds);

// Evaluates every genome with the same trial seeds on up to `workers` threads.
std::vector<EvaluationResult> evaluate_population(std::span<const neat::Genome> genomes, const TaskConfig& config,
                                                  std::span<const std::uint64_t> trial_seeds, unsigned workers);

// Worker count from SWARMNOV_WORKERS, else hardware concurrency.
unsigned default_workers();

}  // namespace swarmnov::tasks
