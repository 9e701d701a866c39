#include "swarmnov/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swarmnov/errors.hpp"
#include "swarmnov/random.hpp"
#include "swarmnov/tasks/evaluate.hpp"

namespace swarmnov::analysis {

std::vector<double> RunRecord::best_per_generation() const {
  std::vector<double> out;
  out.reserve(generations.size());
  for (const auto& g : generations) out.push_back(g.best_fitness);
  return out;
}

std::vector<std::uint64_t> post_evaluation_seeds(std::uint64_t seed, std::size_t trials) {
  std::vector<std::uint64_t> seeds(trials);
  for (std::size_t i = 0; i < trials; ++i) seeds[i] = derive_seed(seed, Stream::kPostEval, i);
  return seeds;
}

double post_evaluate(const neat::Genome& genome, const tasks::TaskConfig& config, std::size_t trials,
                     std::uint64_t seed) {
  if (trials < 1) throw ConfigError("post-evaluation needs at least one trial");
  const auto seeds = post_evaluation_seeds(seed, trials);
  return tasks::evaluate(genome, config, seeds).fitness;
}

std::vector<double> running_max(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
  return out;
}

std::vector<double> fitness_trajectory(std::span<const std::vector<double>> best_per_generation) {
  std::size_t length = 0;
  for (const auto& run : best_per_generation) length = std::max(length, run.size());
  std::vector<double> sum(length, 0.0);
  std::vector<std::size_t> count(length, 0);
  for (const auto& run : best_per_generation) {
    const auto curve = running_max(run);
    for (std::size_t g = 0; g < curve.size(); ++g) {
      sum[g] += curve[g];
      ++count[g];
    }
  }
  for (std::size_t g = 0; g < length; ++g) sum[g] /= static_cast<double>(count[g]);
  return sum;
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

std::size_t SomGrid::best_matching_unit(std::span<const double> d) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < prototypes.size(); ++c) {
    const double s = squared_distance(d, prototypes[c]);
    if (s < best_d) {
      best_d = s;
      best = c;
    }
  }
  return best;
}

double SomGrid::quantization_error(std::span<const Descriptor> data) const {
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& d : data) sum += std::sqrt(squared_distance(d, prototypes[best_matching_unit(d)]));
  return sum / static_cast<double>(data.size());
}

SomGrid train_som(std::span<const Descriptor> descriptors, const SomConfig& config, std::uint64_t seed) {
  if (descriptors.empty()) throw ConfigError("SOM training needs at least one descriptor");
  if (config.width == 0 || config.height == 0 || config.epochs == 0) throw ConfigError("SOM grid and epochs must be positive");
  const std::size_t dim = descriptors.front().size();
  for (const auto& d : descriptors) {
    if (d.size() != dim) throw ConfigError("SOM descriptors differ in length");
  }
  Rng rng(derive_seed(seed, Stream::kAnalysis));

  std::vector<Descriptor> data;
  if (config.max_training_samples && descriptors.size() > config.max_training_samples) {
    std::vector<std::size_t> idx(descriptors.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(config.max_training_samples);
    std::sort(idx.begin(), idx.end());
    for (auto i : idx) data.push_back(descriptors[i]);
  } else {
    data.assign(descriptors.begin(), descriptors.end());
  }

  SomGrid grid;
  grid.width = config.width;
  grid.height = config.height;
  const std::size_t cells = config.width * config.height;
  grid.prototypes.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c) grid.prototypes.push_back(data[uniform_index(rng, data.size())]);
  grid.quantization_errors.push_back(grid.quantization_error(data));

  const double r0 = config.initial_radius > 0.0
                        ? config.initial_radius
                        : static_cast<double>(std::max(config.width, config.height)) / 2.0;
  const double r1 = std::min(config.final_radius, r0);
  const std::size_t total = config.epochs * data.size();
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (auto i : order) {
      const double frac = total > 1 ? static_cast<double>(t) / static_cast<double>(total - 1) : 1.0;
      const double lr = config.initial_learning_rate + (config.final_learning_rate - config.initial_learning_rate) * frac;
      const double radius = r0 + (r1 - r0) * frac;
      const double inv_two_sigma2 = 1.0 / (2.0 * radius * radius);
      const auto& x = data[i];
      const std::size_t bmu = grid.best_matching_unit(x);
      const double bx = static_cast<double>(bmu % config.width), by = static_cast<double>(bmu / config.width);
      for (std::size_t c = 0; c < cells; ++c) {
        const double gx = static_cast<double>(c % config.width) - bx;
        const double gy = static_cast<double>(c / config.width) - by;
        const double h = std::exp(-(gx * gx + gy * gy) * inv_two_sigma2);
        if (h < 1e-6) continue;
        auto& p = grid.prototypes[c];
        for (std::size_t k = 0; k < dim; ++k) p[k] += lr * h * (x[k] - p[k]);
      }
      ++t;
    }
    grid.quantization_errors.push_back(grid.quantization_error(data));
  }
  return grid;
}

std::vector<CellSummary> map_behaviours(const SomGrid& grid, std::span<const Descriptor> descriptors,
                                        std::span<const double> fitnesses) {
  if (!fitnesses.empty() && fitnesses.size() != descriptors.size()) {
    throw ConfigError("one fitness per descriptor required");
  }
  std::vector<CellSummary> cells(grid.prototypes.size());
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    auto& cell = cells[grid.best_matching_unit(descriptors[i])];
    ++cell.count;
    if (!fitnesses.empty()) cell.mean_fitness += fitnesses[i];
  }
  for (auto& c : cells) {
    if (c.count) c.mean_fitness /= static_cast<double>(c.count);
  }
  return cells;
}

Histogram2D density_2d(std::span<const Descriptor> descriptors, std::size_t x_component, std::size_t y_component,
                       std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  Histogram2D h;
  h.bins = bins;
  h.x_component = x_component;
  h.y_component = y_component;
  h.counts.assign(bins * bins, 0);
  auto bin_of = [bins](double v) {
    const auto b = static_cast<long long>(std::floor(std::clamp(v, 0.0, 1.0) * static_cast<double>(bins)));
    return static_cast<std::size_t>(std::min<long long>(b, static_cast<long long>(bins) - 1));
  };
  for (const auto& d : descriptors) {
    if (x_component >= d.size() || y_component >= d.size()) throw ConfigError("descriptor component index out of range");
    ++h.counts[bin_of(d[x_component]) * bins + bin_of(d[y_component])];
  }
  return h;
}

LeastComplex least_complex(std::span<const IndividualRecord> individuals, double level) {
  LeastComplex out;
  for (const auto& ind : individuals) {
    if (ind.fitness < level) continue;
    if (!out.found || ind.complexity < out.complexity ||
        (ind.complexity == out.complexity && ind.generation < out.generation)) {
      out.found = true;
      out.complexity = ind.complexity;
      out.generation = ind.generation;
    }
  }
  return out;
}

ComplexityTable complexity_table(std::span<const RunRecord> runs, std::span<const double> levels) {
  if (!std::is_sorted(levels.begin(), levels.end())) throw ConfigError("fitness levels must be ascending");
  ComplexityTable table;
  for (double level : levels) {
    ComplexityRow row;
    row.level = level;
    for (const auto& run : runs) {
      const auto lc = least_complex(run.individuals, level);
      if (!lc.found) continue;
      ++row.runs_qualifying;
      row.mean_complexity += static_cast<double>(lc.complexity);
      row.mean_generation += static_cast<double>(lc.generation);
    }
    if (row.runs_qualifying) {
      row.mean_complexity /= static_cast<double>(row.runs_qualifying);
      row.mean_generation /= static_cast<double>(row.runs_qualifying);
    }
    table.push_back(row);
  }
  return table;
}

}  // namespace swarmnov::analysis
