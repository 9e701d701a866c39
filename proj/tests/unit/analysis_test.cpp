#include <doctest.h>

#include <algorithm>
#include <random>

#include "stats.hpp"
#include "swarmnov/analysis/analysis.hpp"
#include "swarmnov/neat/innovation.hpp"
#include "swarmnov/random.hpp"
#include "swarmnov/tasks/evaluate.hpp"

using namespace swarmnov;
using namespace swarmnov::analysis;

namespace {

tasks::TaskConfig short_config() {
  auto cfg = tasks::TaskConfig::defaults(tasks::Task::kAggregation, tasks::Characterisation::kBcm);
  cfg.sim.steps = 100;
  return cfg;
}

neat::Genome initial(const tasks::TaskConfig& cfg, std::uint64_t seed) {
  neat::InnovationTracker tracker(static_cast<int>(cfg.input_count() + 3));
  Rng rng(seed);
  return neat::make_initial_genome(static_cast<int>(cfg.input_count()), 3, tracker, rng, 1.0);
}

IndividualRecord individual(std::size_t gen, std::size_t complexity, double fitness) {
  IndividualRecord r;
  r.generation = gen;
  r.complexity = complexity;
  r.fitness = fitness;
  return r;
}

}  // namespace

TEST_CASE("post evaluation") {
  const auto cfg = short_config();
  const auto g = initial(cfg, 1);
  const auto seeds = post_evaluation_seeds(99, 1);
  CHECK(post_evaluate(g, cfg, 1, 99) == tasks::evaluate(g, cfg, seeds).fitness);
  CHECK(post_evaluate(g, cfg, 4, 7) == post_evaluate(g, cfg, 4, 7));
  CHECK(post_evaluation_seeds(7, 4).size() == 4);
  CHECK(post_evaluation_seeds(7, 4) != post_evaluation_seeds(8, 4));
}

TEST_CASE("fitness trajectory") {
  CHECK(running_max(std::vector<double>{0.1, 0.3, 0.2}) == std::vector<double>{0.1, 0.3, 0.3});
  const std::vector<std::vector<double>> runs{{0.1, 0.3, 0.2}, {0.2, 0.2, 0.5}};
  const auto curve = fitness_trajectory(runs);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0] == doctest::Approx(0.15));
  CHECK(curve[1] == doctest::Approx(0.25));
  CHECK(curve[2] == doctest::Approx(0.4));
  const std::vector<std::vector<double>> single{{0.4, 0.1, 0.6, 0.2}};
  CHECK(fitness_trajectory(single) == running_max(single[0]));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u;
  std::vector<std::vector<double>> many(5, std::vector<double>(40));
  for (auto& r : many)
    for (auto& v : r) v = u(rng);
  const auto c = fitness_trajectory(many);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] >= c[i - 1]);
}

TEST_CASE("self-organising map") {
  SomConfig sc;
  sc.width = 4;
  sc.height = 3;
  sc.epochs = 30;
  SUBCASE("degenerate data") {
    std::vector<Descriptor> data(20, Descriptor{0.3, 0.7, 0.1});
    const auto grid = train_som(data, sc, 5);
    REQUIRE(grid.prototypes.size() == 12);
    for (const auto& p : grid.prototypes)
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(p[j] - data[0][j]) < 1e-3);
  }
  SUBCASE("training reduces quantization error and is deterministic") {
    // Behaviour descriptors cluster; draw 300 points around 6 random centres.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u;
    std::normal_distribution<double> noise(0.0, 0.05);
    std::vector<Descriptor> centres(6, Descriptor(5));
    for (auto& c : centres)
      for (auto& x : c) x = u(rng);
    std::vector<Descriptor> data(300, Descriptor(5));
    for (std::size_t i = 0; i < data.size(); ++i)
      for (std::size_t j = 0; j < 5; ++j) data[i][j] = std::clamp(centres[i % 6][j] + noise(rng), 0.0, 1.0);
    const auto a = train_som(data, sc, 21), b = train_som(data, sc, 21);
    CHECK(a.prototypes == b.prototypes);
    REQUIRE(a.quantization_errors.size() == sc.epochs + 1);
    // Index 0 is the sample-initialised map, before any epoch.
    const auto& q = a.quantization_errors;
    CHECK(q.back() < q[1]);
    std::size_t decreasing = 0;
    for (std::size_t e = 2; e < q.size(); ++e) decreasing += q[e] <= q[e - 1];
    CHECK(decreasing * 2 >= q.size() - 2);
    CHECK(a.quantization_error(data) == doctest::Approx(a.quantization_errors.back()));
    // Nearest-prototype assignment against brute force.
    std::vector<double> fit(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) fit[i] = static_cast<double>(i % 7) / 7.0;
    const auto cells = map_behaviours(a, data, fit);
    std::vector<std::size_t> counts(12, 0);
    std::vector<double> sums(12, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < 12; ++k)
        if (novelty::distance(data[i], a.prototypes[k]) < novelty::distance(data[i], a.prototypes[best])) best = k;
      CHECK(a.best_matching_unit(data[i]) == best);
      ++counts[best];
      sums[best] += fit[i];
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < 12; ++k) {
      CHECK(cells[k].count == counts[k]);
      CHECK(cells[k].mean_fitness == doctest::Approx(counts[k] ? sums[k] / counts[k] : 0.0));
      total += cells[k].count;
    }
    CHECK(total == data.size());
    for (std::size_t k = 0; k < 12; ++k) CHECK(a.best_matching_unit(a.prototypes[k]) == k);
  }
}

TEST_CASE("density") {
  std::vector<Descriptor> one{{0.31, 0.99, 0.5}};
  const auto h1 = density_2d(one, 0, 1, 10);
  std::size_t nonzero = 0;
  for (auto c : h1.counts) nonzero += c != 0;
  CHECK(nonzero == 1);
  CHECK(h1.at(3, 9) == 1);
  const auto edge = density_2d(std::vector<Descriptor>{{1.0, 0.0}}, 0, 1, 4);
  CHECK(edge.at(3, 0) == 1);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u;
  std::vector<Descriptor> data(20000, Descriptor(3));
  for (auto& d : data)
    for (auto& x : d) x = u(rng);
  const std::size_t bins = 10;
  const auto h = density_2d(data, 2, 0, bins);
  CHECK(h.x_component == 2);
  std::size_t total = 0;
  double chi2 = 0.0;
  const double expected = static_cast<double>(data.size()) / (bins * bins);
  for (auto c : h.counts) {
    total += c;
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(total == data.size());
  CHECK(testsupport::chi_square_sf(chi2, bins * bins - 1) > 0.01);
}

TEST_CASE("complexity table") {
  RunRecord r1, r2, r3;
  r1.individuals = {individual(0, 71, 0.5), individual(0, 75, 0.62), individual(3, 80, 0.7), individual(5, 73, 0.7)};
  r2.individuals = {individual(0, 71, 0.61), individual(2, 90, 0.9)};
  r3.individuals = {individual(0, 71, 0.1)};
  CHECK(least_complex(r1.individuals, 0.0).complexity == 71);
  const auto lc = least_complex(r1.individuals, 0.65);
  CHECK(lc.found);
  CHECK(lc.complexity == 73);
  CHECK(lc.generation == 5);
  CHECK_FALSE(least_complex(r3.individuals, 0.2).found);

  const std::vector<RunRecord> runs{r1, r2, r3};
  const std::vector<double> levels{0.0, 0.6, 0.65, 0.95};
  const auto table = complexity_table(runs, levels);
  REQUIRE(table.size() == 4);
  CHECK(table[0].runs_qualifying == 3);
  CHECK(table[0].mean_complexity == 71.0);
  CHECK(table[1].runs_qualifying == 2);
  CHECK(table[1].mean_complexity == doctest::Approx((73.0 + 71.0) / 2));
  CHECK(table[2].runs_qualifying == 2);
  CHECK(table[2].mean_complexity == doctest::Approx((73.0 + 90.0) / 2));
  CHECK(table[2].mean_generation == doctest::Approx((5.0 + 2.0) / 2));
  CHECK(table[3].runs_qualifying == 0);
  for (const auto& row : table)
    if (row.runs_qualifying) CHECK(row.mean_complexity >= 71.0);
}
