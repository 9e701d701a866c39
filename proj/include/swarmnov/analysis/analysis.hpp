#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarmnov/analysis/records.hpp"
#include "swarmnov/neat/genome.hpp"
#include "swarmnov/novelty.hpp"
#include "swarmnov/tasks/task.hpp"

namespace swarmnov::analysis {

using novelty::Descriptor;

// Task-appropriate combination of `trials` fresh simulations.
double post_evaluate(const neat::Genome& genome, const tasks::TaskConfig& config, std::size_t trials,
                     std::uint64_t seed);
std::vector<std::uint64_t> post_evaluation_seeds(std::uint64_t seed, std::size_t trials);

std::vector<double> running_max(std::span<const double> values);
// Cross-run mean of each run's highest-so-far fitness. Runs shorter than the
// longest one contribute only to the generations they reached.
std::vector<double> fitness_trajectory(std::span<const std::vector<double>> best_per_generation);

struct SomConfig {
  std::size_t width = 10;
  std::size_t height = 10;
  std::size_t epochs = 50;
  double initial_learning_rate = 0.5;
  double final_learning_rate = 0.01;
  double initial_radius = 0.0;  // 0 selects max(width, height) / 2
  double final_radius = 1.0;
  std::size_t max_training_samples = 0;  // 0 trains on every descriptor
};

// Rectangular Kohonen map; prototypes are row-major [y * width + x].
struct SomGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Descriptor> prototypes;
  // Mean distance to the best-matching unit before training and after each epoch.
  std::vector<double> quantization_errors;

  std::size_t best_matching_unit(std::span<const double> d) const;
  double quantization_error(std::span<const Descriptor> data) const;
};

SomGrid train_som(std::span<const Descriptor> descriptors, const SomConfig& config, std::uint64_t seed);

struct CellSummary {
  std::size_t count = 0;
  double mean_fitness = 0.0;  // 0 for empty cells
};

std::vector<CellSummary> map_behaviours(const SomGrid& grid, std::span<const Descriptor> descriptors,
                                        std::span<const double> fitnesses);

struct Histogram2D {
  std::size_t bins = 0;
  std::size_t x_component = 0;
  std::size_t y_component = 1;
  std::vector<std::size_t> counts;  // [ix * bins + iy] over [0, 1]^2

  std::size_t at(std::size_t ix, std::size_t iy) const { return counts[ix * bins + iy]; }
};

Histogram2D density_2d(std::span<const Descriptor> descriptors, std::size_t x_component, std::size_t y_component,
                       std::size_t bins);

struct LeastComplex {
  bool found = false;
  std::size_t complexity = 0;
  std::size_t generation = 0;  // earliest generation holding that complexity
};

LeastComplex least_complex(std::span<const IndividualRecord> individuals, double level);

struct ComplexityRow {
  double level = 0.0;
  std::size_t runs_qualifying = 0;
  double mean_generation = 0.0;
  double mean_complexity = 0.0;
};

using ComplexityTable = std::vector<ComplexityRow>;

ComplexityTable complexity_table(std::span<const RunRecord> runs, std::span<const double> levels);

}  // namespace swarmnov::analysis
