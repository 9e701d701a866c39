#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace swarmnov {

using Rng = std::mt19937_64;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a parent seed and a path of indices.
template <typename... Ts>
constexpr std::uint64_t derive_seed(std::uint64_t parent, Ts... path) {
  std::uint64_t h = mix64(parent);
  ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(path) + 0x632be59bd9b4e019ULL))), ...);
  return h;
}

// Stream tags used with derive_seed.
enum class Stream : std::uint64_t {
  kRun = 1,
  kEvolution = 2,
  kArchive = 3,
  kRandomScores = 4,
  kTrial = 5,
  kPostEval = 6,
  kAnalysis = 7,
};

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

std::string save_rng(const Rng& rng);
Rng load_rng(const std::string& state);

}  // namespace swarmnov
