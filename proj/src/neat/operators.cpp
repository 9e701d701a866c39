#include "swarmnov/neat/operators.hpp"

#include <algorithm>
#include <cmath>

#include "swarmnov/errors.hpp"

namespace swarmnov::neat {

double compatibility_distance(const Genome& a, const Genome& b, const CompatibilityCoefficients& c) {
  const auto& ga = a.connections;
  const auto& gb = b.connections;
  if (ga.empty() && gb.empty()) return 0.0;

  const int max_a = ga.empty() ? -1 : ga.back().innovation;
  const int max_b = gb.empty() ? -1 : gb.back().innovation;
  std::size_t i = 0, j = 0, matching = 0, disjoint = 0, excess = 0;
  double weight_diff = 0.0;
  while (i < ga.size() || j < gb.size()) {
    if (i < ga.size() && j < gb.size() && ga[i].innovation == gb[j].innovation) {
      weight_diff += std::abs(ga[i].weight - gb[j].weight);
      ++matching;
      ++i;
      ++j;
    } else if (j >= gb.size() || (i < ga.size() && ga[i].innovation < gb[j].innovation)) {
      (ga[i].innovation > max_b ? excess : disjoint) += 1;
      ++i;
    } else {
      (gb[j].innovation > max_a ? excess : disjoint) += 1;
      ++j;
    }
  }
  const double n = static_cast<double>(std::max(ga.size(), gb.size()));
  const double mean_weight = matching ? weight_diff / static_cast<double>(matching) : 0.0;
  return c.excess * static_cast<double>(excess) / n + c.disjoint * static_cast<double>(disjoint) / n +
         c.weight * mean_weight;
}

Genome crossover(const Genome& parent1, double score1, const Genome& parent2, double score2, Rng& rng) {
  bool first_fitter = score1 > score2;
  if (score1 == score2) first_fitter = bernoulli(rng, 0.5);
  const Genome& fitter = first_fitter ? parent1 : parent2;
  const Genome& other = first_fitter ? parent2 : parent1;

  Genome child;
  child.nodes = fitter.nodes;
  child.connections.reserve(fitter.connections.size());
  for (const auto& gene : fitter.connections) {
    const ConnectionGene* match = other.find_innovation(gene.innovation);
    if (match == nullptr) {
      child.connections.push_back(gene);
      continue;
    }
    ConnectionGene chosen = bernoulli(rng, 0.5) ? gene : *match;
    if (!gene.enabled || !match->enabled) chosen.enabled = !bernoulli(rng, 0.75);
    child.connections.push_back(chosen);
  }
  return child;
}

void mutate_weights(Genome& genome, const EvolutionConfig& config, Rng& rng) {
  for (auto& c : genome.connections) {
    if (!bernoulli(rng, config.mutation_rate)) continue;
    if (bernoulli(rng, config.weight_reset_rate)) {
      c.weight = uniform(rng, -config.weight_reset_range, config.weight_reset_range);
    } else {
      c.weight += uniform(rng, -config.weight_perturbation, config.weight_perturbation);
    }
  }
}

bool mutate_add_connection(Genome& genome, InnovationTracker& innovations, const EvolutionConfig& config,
                           Rng& rng) {
  const std::size_t inputs = static_cast<std::size_t>(genome.input_count());
  const std::size_t n = genome.nodes.size();
  if (n <= inputs) return false;
  for (int attempt = 0; attempt < config.add_connection_attempts; ++attempt) {
    const auto& source = genome.nodes[uniform_index(rng, n)];
    const auto& target = genome.nodes[inputs + uniform_index(rng, n - inputs)];
    if (genome.has_connection(source.id, target.id)) continue;
    const double w = uniform(rng, -config.initial_weight_range, config.initial_weight_range);
    genome.insert_connection({innovations.connection_innovation(source.id, target.id), source.id, target.id, w, true});
    return true;
  }
  return false;
}

void split_connection(Genome& genome, int innovation, InnovationTracker& innovations) {
  auto it = std::find_if(genome.connections.begin(), genome.connections.end(),
                         [innovation](const ConnectionGene& c) { return c.innovation == innovation; });
  if (it == genome.connections.end() || !it->enabled) throw ConfigError("can only split an enabled connection");
  it->enabled = false;
  const ConnectionGene old = *it;
  const auto split = innovations.split_connection(old.innovation, old.source, old.target, genome);
  genome.insert_node({split.node_id, NodeKind::kHidden});
  genome.insert_connection({split.in_innovation, old.source, split.node_id, 1.0, true});
  genome.insert_connection({split.out_innovation, split.node_id, old.target, old.weight, true});
}

bool mutate_add_node(Genome& genome, InnovationTracker& innovations, Rng& rng) {
  std::vector<int> enabled;
  for (const auto& c : genome.connections) {
    if (c.enabled) enabled.push_back(c.innovation);
  }
  if (enabled.empty()) return false;
  split_connection(genome, enabled[uniform_index(rng, enabled.size())], innovations);
  return true;
}

Genome mutate(Genome genome, InnovationTracker& innovations, const EvolutionConfig& config, Rng& rng) {
  mutate_weights(genome, config, rng);
  if (bernoulli(rng, config.add_connection_rate)) mutate_add_connection(genome, innovations, config, rng);
  if (bernoulli(rng, config.add_node_rate)) mutate_add_node(genome, innovations, rng);
  return genome;
}

}  // namespace swarmnov::neat
