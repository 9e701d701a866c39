#pragma once

#include <map>
#include <utility>
#include <vector>

namespace swarmnov::neat {

struct Genome;

// Hands out innovation numbers and hidden node ids. A (source, target) pair
// always maps to the same innovation for the lifetime of the tracker; node
// splits are memoised per generation so identical add-node mutations within
// one generation share the hidden node id.
class InnovationTracker {
 public:
  struct Split {
    int node_id = 0;
    int in_innovation = 0;
    int out_innovation = 0;
  };

  struct State {
    int next_innovation = 0;
    int next_node_id = 0;
    std::vector<std::pair<std::pair<int, int>, int>> connections;
    std::vector<std::pair<int, int>> splits;
  };

  explicit InnovationTracker(int first_hidden_node_id = 0) : next_node_id_(first_hidden_node_id) {}
  explicit InnovationTracker(const State& state);

  int connection_innovation(int source, int target);
  Split split_connection(int innovation, int source, int target, const Genome& genome);
  void begin_generation() { splits_.clear(); }

  int next_innovation() const { return next_innovation_; }
  int next_node_id() const { return next_node_id_; }
  State state() const;

 private:
  int next_innovation_ = 0;
  int next_node_id_ = 0;
  std::map<std::pair<int, int>, int> connections_;
  std::map<int, int> splits_;
};

}  // namespace swarmnov::neat
