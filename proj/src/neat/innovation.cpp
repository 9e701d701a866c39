#include "swarmnov/neat/innovation.hpp"

#include "swarmnov/neat/genome.hpp"

namespace swarmnov::neat {

InnovationTracker::InnovationTracker(const State& state)
    : next_innovation_(state.next_innovation), next_node_id_(state.next_node_id) {
  for (const auto& [key, inn] : state.connections) connections_.emplace(key, inn);
  for (const auto& [inn, node] : state.splits) splits_.emplace(inn, node);
}

int InnovationTracker::connection_innovation(int source, int target) {
  auto [it, inserted] = connections_.try_emplace({source, target}, next_innovation_);
  if (inserted) ++next_innovation_;
  return it->second;
}

InnovationTracker::Split InnovationTracker::split_connection(int innovation, int source, int target,
                                                             const Genome& genome) {
  int node_id;
  auto it = splits_.find(innovation);
  if (it != splits_.end() && !genome.has_node(it->second)) {
    node_id = it->second;
  } else {
    // First split of this gene this generation, or the genome already carries
    // the memoised node (re-enabled gene inherited through crossover).
    node_id = next_node_id_++;
    if (it == splits_.end()) splits_.emplace(innovation, node_id);
  }
  return {node_id, connection_innovation(source, node_id), connection_innovation(node_id, target)};
}

InnovationTracker::State InnovationTracker::state() const {
  State s;
  s.next_innovation = next_innovation_;
  s.next_node_id = next_node_id_;
  s.connections.assign(connections_.begin(), connections_.end());
  s.splits.assign(splits_.begin(), splits_.end());
  return s;
}

}  // namespace swarmnov::neat
