#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarmnov/sim/world.hpp"

namespace swarmnov::tasks {

// Everything the fitness functions and characterisations read from one trial.
struct TrialMetrics {
  std::size_t swarm_size = 0;
  std::size_t ticks = 0;  // T
  double d_max = 0.0;     // half arena diagonal
  double max_speed = 0.0;
  double e_max = 0.0;

  // Positions at the end of each sampling window (ticks 50, 100, ..., T).
  std::vector<std::vector<sim::Vec2>> sampled_positions;
  std::vector<sim::Vec2> final_positions;

  // Per-tick, per-robot traces for t = 1..T, row-major [t - 1][i]. Dead
  // robots carry energy, speed and station distance 0.
  std::vector<std::uint8_t> alive;
  std::vector<double> energy;
  std::vector<double> speed;  // |mean wheel speed|
  std::vector<double> station_distance;

  std::size_t at(std::size_t tick_index, std::size_t robot) const { return tick_index * swarm_size + robot; }
  std::size_t survivors() const;  // |a_T|
};

}  // namespace swarmnov::tasks
