#include "swarmnov/neat/network.hpp"

#include <algorithm>
#include <unordered_map>

#include "swarmnov/errors.hpp"

namespace swarmnov::neat {

Network::Network(const Genome& genome) {
  inputs_ = static_cast<std::size_t>(genome.input_count());
  outputs_ = static_cast<std::size_t>(genome.output_count());
  nodes_ = genome.nodes.size();

  // Nodes are sorted by id with inputs first, then outputs, then hidden, so
  // the position in the node list is the activation slot.
  std::unordered_map<int, std::uint32_t> slot;
  slot.reserve(nodes_);
  for (std::size_t i = 0; i < nodes_; ++i) slot.emplace(genome.nodes[i].id, static_cast<std::uint32_t>(i));

  const std::size_t computed = nodes_ - inputs_;
  std::vector<std::vector<Link>> incoming(computed);
  for (const auto& c : genome.connections) {
    if (!c.enabled) continue;
    const auto target = slot.at(c.target);
    incoming[target - inputs_].push_back({slot.at(c.source), c.weight});
  }
  offsets_.reserve(computed + 1);
  offsets_.push_back(0);
  for (auto& in : incoming) {
    links_.insert(links_.end(), in.begin(), in.end());
    offsets_.push_back(static_cast<std::uint32_t>(links_.size()));
  }
}

NetworkState Network::make_state() const {
  NetworkState s;
  s.activation.assign(nodes_, 0.0);
  s.next.assign(nodes_, 0.0);
  return s;
}

void Network::activate(NetworkState& state, std::span<const double> inputs, std::span<double> outputs) const {
  if (inputs.size() != inputs_) {
    throw ConfigError("network expects " + std::to_string(inputs_) + " inputs, got " + std::to_string(inputs.size()));
  }
  if (outputs.size() != outputs_) throw ConfigError("output buffer size mismatch");
  if (state.activation.size() != nodes_) throw ConfigError("network state does not belong to this network");

  double* act = state.activation.data();
  std::copy(inputs.begin(), inputs.end(), act);
  double* next = state.next.data();
  const Link* links = links_.data();
  for (std::size_t j = 0; j + inputs_ < nodes_; ++j) {
    double sum = 0.0;
    for (std::uint32_t k = offsets_[j]; k < offsets_[j + 1]; ++k) sum += links[k].weight * act[links[k].source];
    next[j] = steepened_sigmoid(sum);
  }
  std::copy(next, next + (nodes_ - inputs_), act + inputs_);
  std::copy(act + inputs_, act + inputs_ + outputs_, outputs.begin());
}

std::vector<double> activate(const Network& network, NetworkState& state, std::span<const double> inputs) {
  std::vector<double> out(network.output_count());
  network.activate(state, inputs, out);
  return out;
}

}  // namespace swarmnov::neat
