#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmnov/analysis/analysis.hpp"
#include "swarmnov/experiment/config.hpp"
#include "swarmnov/experiment/persistence.hpp"

namespace swarmnov::experiment {

enum class RunStatus { kPending, kRunning, kComplete };

std::string_view to_string(RunStatus s);

struct RunEntry {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::kPending;
  std::size_t generations_completed = 0;
  std::string directory;  // relative to the manifest
};

struct Manifest {
  std::filesystem::path path;  // manifest.json; its directory holds every artifact
  std::string config_path;
  std::string config_hash;
  ExperimentConfig config;
  std::vector<RunEntry> runs;

  std::filesystem::path root() const { return path.parent_path(); }
  RunPaths run_paths(std::size_t index) const { return {root() / runs.at(index).directory}; }
  bool complete() const;
};

nlohmann::json to_json(const Manifest& m);
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& m);

struct RunOptions {
  unsigned workers = 0;  // 0 uses tasks::default_workers()
  // Stops after this many generations in this session, leaving the
  // experiment resumable. Used to simulate interruptions.
  std::optional<std::size_t> max_generations;
  bool force = false;      // overwrite an existing manifest
  std::ostream* log = nullptr;
};

// Starts a fresh experiment under config.output_dir.
Manifest run_experiment(const ExperimentConfig& config, const std::filesystem::path& config_path,
                        const RunOptions& options = {});

// Continues every unfinished run. The config file must still hash to the
// recorded value.
Manifest resume_experiment(const std::filesystem::path& manifest_path, const RunOptions& options = {});

// Re-evaluates each generation's champion with fresh seeds; writes posteval.csv per run.
void post_evaluate_runs(const std::filesystem::path& manifest_path, const RunOptions& options = {});

enum class ExportKind { kTrajectories, kTrajectoryCurves, kSom, kDensity, kComplexity };

std::string_view to_string(ExportKind k);
ExportKind parse_export_kind(std::string_view name);  // throws ConfigError

struct ExportOptions {
  analysis::SomConfig som{.max_training_samples = 5000};
  std::size_t density_x = 0;
  std::size_t density_y = 1;
  std::size_t density_bins = 20;
  std::vector<double> complexity_levels{0.60, 0.65, 0.70, 0.75, 0.80, 0.85};
  std::optional<std::filesystem::path> output_dir;  // defaults to <manifest dir>/exports
};

// Returns the files written. Throws RunIncomplete when a run has no
// completed generation.
std::vector<std::filesystem::path> export_artifacts(const std::filesystem::path& manifest_path, ExportKind kind,
                                                    const ExportOptions& options = {});

}  // namespace swarmnov::experiment
