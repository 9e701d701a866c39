#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "swarmnov/neat/config.hpp"
#include "swarmnov/novelty.hpp"
#include "swarmnov/selection.hpp"
#include "swarmnov/tasks/task.hpp"

namespace swarmnov::experiment {

inline constexpr int kSchemaVersion = 1;

struct SelectionConfig {
  selection::Policy policy = selection::Policy::kFitness;
  double percentile = 0.50;
  double smoothing = 0.25;
  double rho = 0.75;
};

struct ExperimentConfig {
  tasks::TaskConfig task = tasks::TaskConfig::defaults(tasks::Task::kAggregation, tasks::Characterisation::kBcmcl);
  SelectionConfig selection;
  novelty::NoveltyConfig novelty;
  neat::EvolutionConfig evolution;
  std::size_t trials = 10;
  std::size_t posteval_trials = 100;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::string output_dir = "runs";

  // Defaults for a task: 250 generations for aggregation, 400 for resource sharing.
  static ExperimentConfig defaults(tasks::Task task, tasks::Characterisation characterisation);
};

// Fills omitted fields with task defaults. Throws ConfigError naming every
// offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

// Fully expanded form; parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& config);

// FNV-1a over the canonical expanded form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

// Throws ConfigError listing every problem.
void validate(const ExperimentConfig& config);

}  // namespace swarmnov::experiment
