#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "swarmnov/neat/genome.hpp"

namespace swarmnov::neat {

inline double steepened_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-4.9 * x)); }

// Per-trial activation values, one per network node.
struct NetworkState {
  std::vector<double> activation;
  std::vector<double> next;

  void reset() {
    std::fill(activation.begin(), activation.end(), 0.0);
    std::fill(next.begin(), next.end(), 0.0);
  }
};

// Phenotype compiled from a genome. Each activate() call performs one
// synchronous propagation step: non-input nodes read the previous-tick
// activation of their sources, inputs are read directly.
class Network {
 public:
  explicit Network(const Genome& genome);

  std::size_t input_count() const { return inputs_; }
  std::size_t output_count() const { return outputs_; }
  std::size_t node_count() const { return nodes_; }

  NetworkState make_state() const;
  void activate(NetworkState& state, std::span<const double> inputs, std::span<double> outputs) const;

 private:
  struct Link {
    std::uint32_t source;
    double weight;
  };

  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
  std::size_t nodes_ = 0;
  // incoming links of non-input node j are links_[offsets_[j - inputs_] .. offsets_[j - inputs_ + 1])
  std::vector<std::uint32_t> offsets_;
  std::vector<Link> links_;
};

std::vector<double> activate(const Network& network, NetworkState& state, std::span<const double> inputs);

}  // namespace swarmnov::neat
