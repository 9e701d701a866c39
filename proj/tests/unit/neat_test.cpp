#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "genomes.hpp"
#include "swarmnov/errors.hpp"
#include "swarmnov/neat/genome.hpp"
#include "swarmnov/neat/network.hpp"
#include "swarmnov/neat/operators.hpp"
#include "swarmnov/neat/population.hpp"

using namespace swarmnov;
using namespace swarmnov::neat;
using testsupport::make_genome;

namespace {

Genome random_genome(Rng& rng, InnovationTracker& tracker, int inputs = 4, int outputs = 2, int growth = 6) {
  auto g = make_initial_genome(inputs, outputs, tracker, rng, 1.0);
  EvolutionConfig cfg;
  for (int i = 0; i < growth; ++i) {
    if (uniform01(rng) < 0.5) mutate_add_node(g, tracker, rng);
    mutate_add_connection(g, tracker, cfg, rng);
  }
  mutate_weights(g, cfg, rng);
  return g;
}

std::set<int> innovations(const Genome& g) {
  std::set<int> s;
  for (const auto& c : g.connections) s.insert(c.innovation);
  return s;
}

}  // namespace

TEST_CASE("initial genomes match the complexity anchors") {
  Rng rng(1);
  InnovationTracker t1(20), t2(29);
  const auto agg = make_initial_genome(17, 3, t1, rng, 1.0);
  const auto res = make_initial_genome(26, 3, t2, rng, 1.0);
  CHECK(agg.nodes.size() == 20);
  CHECK(agg.connections.size() == 51);
  CHECK(agg.complexity() == 71);
  CHECK(res.complexity() == 107);
  CHECK(agg.hidden_count() == 0);
  for (const auto& c : agg.connections) CHECK(std::abs(c.weight) <= 1.0);
  agg.check_invariants();
}

TEST_CASE("genome text round trip") {
  Rng rng(2);
  InnovationTracker tracker(6);
  auto g = random_genome(rng, tracker);
  g.id = 42;
  g.connections.front().enabled = false;
  const auto back = genome_from_text(to_text(g));
  CHECK(back.id == 42);
  CHECK(back.same_genes(g));

  const auto many = genomes_from_text(to_text(g) + to_text(back));
  CHECK(many.size() == 2);
  CHECK_THROWS(genome_from_text("genome 1\nnode 0 banana\nend\n"));
}

TEST_CASE("invariant checks reject broken genomes") {
  auto g = make_genome(1, 1, {}, {{0, 0, 1, 0.5}});
  g.check_invariants();
  g.connections.push_back({0, 0, 1, 0.1, true});
  CHECK_THROWS_AS(g.check_invariants(), RuntimeFailure);
  auto dangling = make_genome(1, 1, {}, {{0, 0, 7, 0.5}});
  CHECK_THROWS_AS(dangling.check_invariants(), RuntimeFailure);
}

TEST_CASE("network with zero weights outputs 0.5") {
  auto g = make_genome(2, 2, {}, {{0, 0, 2, 0.0}, {1, 1, 3, 0.0}, {2, 0, 3, 0.0}});
  Network net(g);
  auto st = net.make_state();
  const auto out = activate(net, st, std::vector<double>{0.3, -4.0});
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(0.5));
}

TEST_CASE("single link follows the steepened sigmoid") {
  for (double w : {-1.3, 0.0, 0.25, 2.0}) {
    auto g = make_genome(1, 1, {}, {{0, 0, 1, w}});
    Network net(g);
    auto st = net.make_state();
    const auto out = activate(net, st, std::vector<double>{1.0});
    CHECK(out[0] == doctest::Approx(1.0 / (1.0 + std::exp(-4.9 * w))).epsilon(1e-12));
  }
}

TEST_CASE("recurrence reads the previous tick") {
  // input 0 -> output 1 (w = 0.5), output self-loop (w = -1.0), hidden 2 between.
  auto g = make_genome(1, 1, {2}, {{0, 0, 2, 1.5}, {1, 2, 1, 0.7}, {2, 1, 1, -1.0}});
  Network net(g);
  auto st = net.make_state();
  const double x = 0.4;
  // tick 1: hidden reads input; output reads hidden(0) and itself(0)
  const double h1 = steepened_sigmoid(1.5 * x);
  const double o1 = steepened_sigmoid(0.7 * 0.0 + -1.0 * 0.0);
  // tick 2
  const double h2 = steepened_sigmoid(1.5 * x);
  const double o2 = steepened_sigmoid(0.7 * h1 + -1.0 * o1);
  const double o3 = steepened_sigmoid(0.7 * h2 + -1.0 * o2);
  CHECK(activate(net, st, std::vector<double>{x})[0] == doctest::Approx(o1).epsilon(1e-14));
  CHECK(activate(net, st, std::vector<double>{x})[0] == doctest::Approx(o2).epsilon(1e-14));
  CHECK(activate(net, st, std::vector<double>{x})[0] == doctest::Approx(o3).epsilon(1e-14));
  st.reset();
  CHECK(activate(net, st, std::vector<double>{x})[0] == doctest::Approx(o1).epsilon(1e-14));
}

TEST_CASE("self-recurrent output with zero input") {
  auto g = make_genome(1, 1, {}, {{0, 1, 1, 2.0}});
  Network net(g);
  auto st = net.make_state();
  const double t1 = steepened_sigmoid(0.0);
  const double t2 = steepened_sigmoid(2.0 * t1);
  CHECK(activate(net, st, std::vector<double>{0.0})[0] == doctest::Approx(t1));
  CHECK(activate(net, st, std::vector<double>{0.0})[0] == doctest::Approx(t2));
}

TEST_CASE("disabled links are ignored and sizes are checked") {
  auto g = make_genome(1, 1, {}, {{0, 0, 1, 3.0}});
  g.connections[0].enabled = false;
  Network net(g);
  auto st = net.make_state();
  CHECK(activate(net, st, std::vector<double>{1.0})[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(activate(net, st, std::vector<double>{1.0, 2.0}), ConfigError);
}

TEST_CASE("activation is deterministic") {
  Rng rng(9);
  InnovationTracker tracker(6);
  const auto g = random_genome(rng, tracker, 4, 2, 10);
  Network net(g);
  auto a = net.make_state(), b = net.make_state();
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x{uniform01(rng), uniform01(rng), uniform01(rng), uniform01(rng)};
    CHECK(activate(net, a, x) == activate(net, b, x));
  }
}

TEST_CASE("compatibility distance") {
  const CompatibilityCoefficients c;
  auto a = make_genome(1, 1, {}, {{0, 0, 1, 0.5}});
  CHECK(compatibility_distance(a, a, c) == 0.0);
  auto b = a;
  b.connections[0].weight = 0.5 + 0.3;
  CHECK(compatibility_distance(a, b, c) == doctest::Approx(0.4 * 0.3));

  // Innovations 1 and 2 are disjoint, 3 is excess; N = 3.
  auto x = make_genome(2, 1, {}, {{0, 0, 2, 1.0}, {1, 1, 2, 1.0}, {3, 2, 2, 1.0}});
  auto y = make_genome(2, 1, {}, {{0, 0, 2, 1.0}, {2, 2, 0, 1.0}});
  CHECK(compatibility_distance(x, y, c) == doctest::Approx(2.0 / 3 + 1.0 / 3));
  CompatibilityCoefficients excess_only{1.0, 0.0, 0.0};
  CHECK(compatibility_distance(x, y, excess_only) == doctest::Approx(1.0 / 3));

  Rng rng(3);
  InnovationTracker tracker(6);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_genome(rng, tracker), q = random_genome(rng, tracker);
    CHECK(compatibility_distance(p, q, c) == doctest::Approx(compatibility_distance(q, p, c)));
  }
}

TEST_CASE("crossover") {
  Rng rng(4);
  InnovationTracker tracker(6);
  SUBCASE("identical structure is preserved") {
    const auto a = random_genome(rng, tracker);
    auto b = a;
    for (auto& c : b.connections) c.weight += 1.0;
    const auto child = crossover(a, 1.0, b, 2.0, rng);
    CHECK(innovations(child) == innovations(a));
    CHECK(child.nodes == a.nodes);
  }
  SUBCASE("the fitter parent's extra genes are inherited") {
    auto a = make_genome(2, 1, {}, {{0, 0, 2, 1.0}, {1, 1, 2, 1.0}});
    auto b = make_genome(2, 1, {}, {{0, 0, 2, -1.0}});
    for (int i = 0; i < 20; ++i) {
      const auto child = crossover(a, 2.0, b, 1.0, rng);
      CHECK(child.find_innovation(1) != nullptr);
      const auto weaker = crossover(b, 1.0, a, 2.0, rng);
      CHECK(weaker.find_innovation(1) != nullptr);
    }
  }
  SUBCASE("offspring genes come from the parents") {
    for (int i = 0; i < 200; ++i) {
      const auto a = random_genome(rng, tracker), b = random_genome(rng, tracker);
      const auto child = crossover(a, uniform01(rng), b, uniform01(rng), rng);
      child.check_invariants();
      for (const auto& c : child.connections) {
        const auto* pa = a.find_innovation(c.innovation);
        const auto* pb = b.find_innovation(c.innovation);
        REQUIRE((pa || pb));
        CHECK(((pa && pa->weight == c.weight) || (pb && pb->weight == c.weight)));
      }
    }
  }
}

TEST_CASE("add-node splits a connection canonically") {
  auto g = make_genome(1, 1, {}, {{0, 0, 1, 0.8}});
  InnovationTracker tracker(2);
  tracker.connection_innovation(0, 1);
  split_connection(g, 0, tracker);
  g.check_invariants();
  CHECK(g.hidden_count() == 1);
  const int h = 2;
  CHECK_FALSE(g.find_innovation(0)->enabled);
  bool in = false, out = false;
  for (const auto& c : g.connections) {
    if (c.source == 0 && c.target == h) in = c.weight == 1.0 && c.enabled;
    if (c.source == h && c.target == 1) out = c.weight == 0.8 && c.enabled;
  }
  CHECK(in);
  CHECK(out);
}

TEST_CASE("identical mutations in one generation share innovations") {
  auto a = make_genome(1, 1, {}, {{0, 0, 1, 0.8}});
  auto b = a;
  InnovationTracker tracker(2);
  tracker.connection_innovation(0, 1);
  split_connection(a, 0, tracker);
  split_connection(b, 0, tracker);
  CHECK(a.nodes == b.nodes);
  CHECK(innovations(a) == innovations(b));

  // A later generation splitting the same link gets a new hidden node.
  tracker.begin_generation();
  auto c = make_genome(1, 1, {}, {{0, 0, 1, 0.8}});
  split_connection(c, 0, tracker);
  CHECK(c.nodes.back().id != a.nodes.back().id);
  // Same (source, target) pair always maps to the same innovation.
  CHECK(tracker.connection_innovation(0, 1) == 0);
}

TEST_CASE("mutation properties") {
  Rng rng(5);
  InnovationTracker tracker(6);
  EvolutionConfig cfg;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_genome(rng, tracker);
    const auto m = mutate(g, tracker, cfg, rng);
    m.check_invariants();
    CHECK(m.complexity() >= g.complexity());
  }
  EvolutionConfig off = cfg;
  off.mutation_rate = 0.0;
  off.add_connection_rate = 0.0;
  off.add_node_rate = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto g = random_genome(rng, tracker);
    CHECK(mutate(g, tracker, off, rng).same_genes(g));
  }
}

TEST_CASE("offspring allocation") {
  std::vector<double> w{1.0, 1.0, 2.0};
  auto a = allocate_offspring(w, {true, true, true}, 8);
  CHECK(a == std::vector<std::size_t>{2, 2, 4});
  auto b = allocate_offspring(w, {true, false, true}, 9);
  CHECK(b[1] == 0);
  CHECK(b[0] + b[2] == 9);
  auto z = allocate_offspring(std::vector<double>{0.0, 0.0}, {true, true}, 5);
  CHECK(z[0] + z[1] == 5);

  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + uniform_index(rng, 12);
    std::vector<double> weights(n);
    std::vector<bool> eligible(n);
    for (std::size_t k = 0; k < n; ++k) {
      weights[k] = uniform01(rng);
      eligible[k] = uniform01(rng) < 0.8;
    }
    eligible[uniform_index(rng, n)] = true;
    const std::size_t total = uniform_index(rng, 300);
    const auto got = allocate_offspring(weights, eligible, total);
    CHECK(std::accumulate(got.begin(), got.end(), std::size_t{0}) == total);
  }
}

TEST_CASE("population epoch") {
  EvolutionConfig cfg;
  Rng rng(7);
  Population pop(cfg, 17, 3, rng);
  REQUIRE(pop.genomes().size() == 200);

  SUBCASE("size is preserved and every member has one species") {
    for (int g = 0; g < 15; ++g) {
      std::vector<double> scores(pop.genomes().size());
      for (auto& s : scores) s = uniform01(rng);
      pop.epoch(scores, rng);
      CHECK(pop.genomes().size() == 200);
      std::vector<int> seen(200, 0);
      std::size_t offspring = 0;
      for (const auto& s : pop.last_speciation()) {
        for (auto m : s.members) seen[m]++;
        offspring += s.offspring;
      }
      CHECK(offspring == 200);
      CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
      for (const auto& genome : pop.genomes()) genome.check_invariants();
    }
  }

  SUBCASE("identical genomes form one species") {
    auto state = pop.state();
    for (auto& g : state.genomes) g.connections = state.genomes.front().connections;
    state.species.clear();
    Population same(cfg, state);
    same.epoch(std::vector<double>(200, 0.5), rng);
    CHECK(same.last_speciation().size() == 1);
  }

  SUBCASE("champions of large species survive unchanged") {
    std::vector<double> scores(200);
    for (auto& s : scores) s = uniform01(rng);
    const auto before = pop.genomes();
    pop.epoch(scores, rng);
    for (const auto& s : pop.last_speciation()) {
      if (s.members.size() <= cfg.elite_species_size || s.offspring == 0) continue;
      std::size_t best = s.members.front();
      for (auto m : s.members) {
        if (scores[m] > scores[best]) best = m;
      }
      const bool kept = std::any_of(pop.genomes().begin(), pop.genomes().end(),
                                    [&](const Genome& g) { return g.same_genes(before[best]); });
      CHECK(kept);
    }
  }

  SUBCASE("state round trip continues identically") {
    std::vector<double> scores(200);
    for (auto& s : scores) s = uniform01(rng);
    pop.epoch(scores, rng);
    Population copy(cfg, pop.state());
    Rng r1(99), r2(99);
    pop.epoch(scores, r1);
    copy.epoch(scores, r2);
    REQUIRE(pop.genomes().size() == copy.genomes().size());
    for (std::size_t i = 0; i < pop.genomes().size(); ++i) {
      CHECK(pop.genomes()[i].same_genes(copy.genomes()[i]));
      CHECK(pop.genomes()[i].id == copy.genomes()[i].id);
    }
  }

  SUBCASE("bad scores are rejected") {
    CHECK_THROWS_AS(pop.epoch(std::vector<double>(3, 1.0), rng), ConfigError);
    std::vector<double> neg(200, 0.1);
    neg[4] = -1.0;
    CHECK_THROWS_AS(pop.epoch(neg, rng), ConfigError);
  }
}

TEST_CASE("threshold adapts toward the species target") {
  EvolutionConfig cfg;
  cfg.population_size = 60;
  Rng rng(8);
  Population pop(cfg, 4, 2, rng);
  const double start = pop.threshold();
  std::vector<double> scores(60, 0.5);
  pop.epoch(scores, rng);
  // Too few species at first: the threshold must drop.
  CHECK(pop.threshold() < start);
  CHECK(pop.threshold() >= cfg.min_threshold);
}
