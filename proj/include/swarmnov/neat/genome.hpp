#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swarmnov/random.hpp"

namespace swarmnov::neat {

enum class NodeKind : std::uint8_t { kInput, kOutput, kHidden };

struct NodeGene {
  int id = 0;
  NodeKind kind = NodeKind::kHidden;

  friend bool operator==(const NodeGene&, const NodeGene&) = default;
};

struct ConnectionGene {
  int innovation = 0;
  int source = 0;
  int target = 0;
  double weight = 0.0;
  bool enabled = true;

  friend bool operator==(const ConnectionGene&, const ConnectionGene&) = default;
};

using GenomeId = std::uint64_t;

class InnovationTracker;

// Nodes are kept sorted by id and connections by innovation number. Input
// nodes occupy ids [0, inputs), outputs [inputs, inputs + outputs).
struct Genome {
  GenomeId id = 0;
  std::vector<NodeGene> nodes;
  std::vector<ConnectionGene> connections;

  std::size_t complexity() const { return nodes.size() + connections.size(); }
  int input_count() const;
  int output_count() const;
  int hidden_count() const;

  bool has_node(int node_id) const;
  bool has_connection(int source, int target) const;
  const ConnectionGene* find_innovation(int innovation) const;

  // Adds a gene keeping the sort order.
  void insert_node(NodeGene node);
  void insert_connection(ConnectionGene gene);

  // Throws RuntimeFailure when ordering, uniqueness or endpoint consistency is broken.
  void check_invariants() const;

  // Structural and weight equality, ignoring the id.
  bool same_genes(const Genome& other) const {
    return nodes == other.nodes && connections == other.connections;
  }
};

// Fully connected input->output network without hidden nodes or bias.
Genome make_initial_genome(int inputs, int outputs, InnovationTracker& innovations, Rng& rng,
                           double weight_range);

// Line-oriented text form:
//   genome <id>
//   node <id> <input|output|hidden>
//   conn <innovation> <source> <target> <weight> <0|1>
//   end
std::string to_text(const Genome& genome);
Genome genome_from_text(std::string_view text);
std::vector<Genome> genomes_from_text(std::string_view text);

}  // namespace swarmnov::neat
