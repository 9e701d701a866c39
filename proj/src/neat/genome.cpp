#include "swarmnov/neat/genome.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "swarmnov/errors.hpp"
#include "swarmnov/io.hpp"
#include "swarmnov/neat/innovation.hpp"

namespace swarmnov::neat {

namespace {

int count_kind(const std::vector<NodeGene>& nodes, NodeKind kind) {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [kind](const NodeGene& n) { return n.kind == kind; }));
}

const char* kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kInput: return "input";
    case NodeKind::kOutput: return "output";
    case NodeKind::kHidden: return "hidden";
  }
  return "hidden";
}

NodeKind parse_kind(std::string_view s) {
  if (s == "input") return NodeKind::kInput;
  if (s == "output") return NodeKind::kOutput;
  if (s == "hidden") return NodeKind::kHidden;
  throw RuntimeFailure("unknown node kind '" + std::string(s) + "'");
}

}  // namespace

int Genome::input_count() const { return count_kind(nodes, NodeKind::kInput); }
int Genome::output_count() const { return count_kind(nodes, NodeKind::kOutput); }
int Genome::hidden_count() const { return count_kind(nodes, NodeKind::kHidden); }

bool Genome::has_node(int node_id) const {
  return std::binary_search(nodes.begin(), nodes.end(), NodeGene{node_id, NodeKind::kHidden},
                            [](const NodeGene& a, const NodeGene& b) { return a.id < b.id; });
}

bool Genome::has_connection(int source, int target) const {
  return std::any_of(connections.begin(), connections.end(),
                     [&](const ConnectionGene& c) { return c.source == source && c.target == target; });
}

const ConnectionGene* Genome::find_innovation(int innovation) const {
  auto it = std::lower_bound(connections.begin(), connections.end(), innovation,
                             [](const ConnectionGene& c, int inn) { return c.innovation < inn; });
  if (it == connections.end() || it->innovation != innovation) return nullptr;
  return &*it;
}

void Genome::insert_node(NodeGene node) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node,
                             [](const NodeGene& a, const NodeGene& b) { return a.id < b.id; });
  nodes.insert(it, node);
}

void Genome::insert_connection(ConnectionGene gene) {
  auto it = std::lower_bound(connections.begin(), connections.end(), gene,
                             [](const ConnectionGene& a, const ConnectionGene& b) { return a.innovation < b.innovation; });
  connections.insert(it, gene);
}

void Genome::check_invariants() const {
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i - 1].id >= nodes[i].id) throw RuntimeFailure("node ids not strictly increasing");
  }
  for (std::size_t i = 1; i < connections.size(); ++i) {
    if (connections[i - 1].innovation >= connections[i].innovation) {
      throw RuntimeFailure("innovation numbers not strictly increasing");
    }
  }
  std::set<std::pair<int, int>> endpoints;
  for (const auto& c : connections) {
    if (!has_node(c.source) || !has_node(c.target)) throw RuntimeFailure("connection references missing node");
    if (!endpoints.emplace(c.source, c.target).second) throw RuntimeFailure("duplicate (source, target) pair");
    auto target = std::lower_bound(nodes.begin(), nodes.end(), c.target,
                                   [](const NodeGene& n, int id) { return n.id < id; });
    if (target->kind == NodeKind::kInput) throw RuntimeFailure("connection into an input node");
  }
  const int inputs = input_count();
  const int outputs = output_count();
  for (const auto& n : nodes) {
    const bool ok = (n.kind == NodeKind::kInput && n.id < inputs) ||
                    (n.kind == NodeKind::kOutput && n.id >= inputs && n.id < inputs + outputs) ||
                    (n.kind == NodeKind::kHidden && n.id >= inputs + outputs);
    if (!ok) throw RuntimeFailure("node id out of its kind's range");
  }
}

Genome make_initial_genome(int inputs, int outputs, InnovationTracker& innovations, Rng& rng, double weight_range) {
  if (inputs < 1 || outputs < 1) throw ConfigError("genome needs at least one input and one output");
  Genome g;
  g.nodes.reserve(static_cast<std::size_t>(inputs + outputs));
  for (int i = 0; i < inputs; ++i) g.nodes.push_back({i, NodeKind::kInput});
  for (int o = 0; o < outputs; ++o) g.nodes.push_back({inputs + o, NodeKind::kOutput});
  g.connections.reserve(static_cast<std::size_t>(inputs * outputs));
  for (int i = 0; i < inputs; ++i) {
    for (int o = 0; o < outputs; ++o) {
      const int target = inputs + o;
      g.connections.push_back({innovations.connection_innovation(i, target), i, target,
                               uniform(rng, -weight_range, weight_range), true});
    }
  }
  std::sort(g.connections.begin(), g.connections.end(),
            [](const ConnectionGene& a, const ConnectionGene& b) { return a.innovation < b.innovation; });
  return g;
}

std::string to_text(const Genome& genome) {
  std::string out = "genome " + std::to_string(genome.id) + "\n";
  for (const auto& n : genome.nodes) {
    out += "node " + std::to_string(n.id) + " " + kind_name(n.kind) + "\n";
  }
  for (const auto& c : genome.connections) {
    out += "conn " + std::to_string(c.innovation) + " " + std::to_string(c.source) + " " +
           std::to_string(c.target) + " " + io::format_double(c.weight) + " " + (c.enabled ? "1" : "0") + "\n";
  }
  out += "end\n";
  return out;
}

std::vector<Genome> genomes_from_text(std::string_view text) {
  std::vector<Genome> out;
  Genome* current = nullptr;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    auto fields = io::split(line, ' ');
    const auto& tag = fields[0];
    if (tag == "genome" && fields.size() == 2) {
      if (current) throw RuntimeFailure("genome block not terminated");
      current = &out.emplace_back();
      current->id = static_cast<GenomeId>(io::parse_int(fields[1]));
    } else if (tag == "node" && fields.size() == 3 && current) {
      current->nodes.push_back({static_cast<int>(io::parse_int(fields[1])), parse_kind(fields[2])});
    } else if (tag == "conn" && fields.size() == 6 && current) {
      current->connections.push_back({static_cast<int>(io::parse_int(fields[1])),
                                      static_cast<int>(io::parse_int(fields[2])),
                                      static_cast<int>(io::parse_int(fields[3])), io::parse_double(fields[4]),
                                      fields[5] == "1"});
    } else if (tag == "end" && current) {
      current->check_invariants();
      current = nullptr;
    } else {
      throw RuntimeFailure("malformed genome line '" + std::string(line) + "'");
    }
  }
  if (current) throw RuntimeFailure("genome block not terminated");
  return out;
}

Genome genome_from_text(std::string_view text) {
  auto all = genomes_from_text(text);
  if (all.size() != 1) throw RuntimeFailure("expected exactly one genome");
  return std::move(all.front());
}

}  // namespace swarmnov::neat
