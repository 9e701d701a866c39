#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "swarmnov/random.hpp"

namespace swarmnov::novelty {

// Fixed-length behaviour characterisation; elements lie in [0, 1].
using Descriptor = std::vector<double>;

struct NoveltyConfig {
  std::size_t k = 15;
  double archive_probability = 0.02;
  // 0 means unlimited. A full archive stops accepting insertions.
  std::size_t archive_limit = 0;

  void validate() const;
};

// Euclidean distance; throws ConfigError on length mismatch.
double distance(std::span<const double> a, std::span<const double> b);

// Mean distance from x to its k nearest references (all of them when fewer
// than k exist); 0 for an empty reference set.
double sparseness(std::span<const double> x, std::span<const Descriptor> references, std::size_t k);

// Append-only store of past behaviours, each tagged with its insertion generation.
class Archive {
 public:
  struct Entry {
    std::size_t generation;
    Descriptor descriptor;
  };

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<Descriptor>& descriptors() const { return descriptors_; }

  void add(std::size_t generation, Descriptor d);

  // generation,v0,v1,... one row per entry
  std::string to_csv() const;
  static Archive from_csv(const std::string& text);

 private:
  std::vector<Entry> entries_;
  std::vector<Descriptor> descriptors_;
};

// Scores each descriptor against the rest of the population plus the archive,
// then inserts every descriptor independently with the configured probability.
std::vector<double> score_generation(std::span<const Descriptor> population, Archive& archive,
                                     const NoveltyConfig& config, Rng& rng, std::size_t generation);

}  // namespace swarmnov::novelty
