#pragma once

#include <cstddef>
#include <string_view>

#include "swarmnov/sim/world.hpp"

namespace swarmnov::tasks {

enum class Task { kAggregation, kResourceSharing };
enum class Characterisation { kBcm, kBcl, kBcmcl, kBsimple, kBextra };

std::string_view to_string(Task t);
std::string_view to_string(Characterisation c);
Task parse_task(std::string_view name);                          // throws ConfigError
Characterisation parse_characterisation(std::string_view name);  // throws ConfigError
bool compatible(Task t, Characterisation c);

struct TaskConfig {
  Task task = Task::kAggregation;
  Characterisation characterisation = Characterisation::kBcmcl;
  sim::SimConfig sim = sim::SimConfig::aggregation();
  int sample_interval_ticks = 50;  // 5 s at dt = 0.1 s
  double cluster_range = 0.25;

  static TaskConfig defaults(Task task, Characterisation characterisation);

  std::size_t input_count() const { return sim.input_count(); }
  static constexpr std::size_t output_count() { return 3; }
  std::size_t sample_count() const { return static_cast<std::size_t>(sim.steps / sample_interval_ticks); }
  std::size_t descriptor_length() const;

  // Throws ConfigError.
  void validate() const;
};

}  // namespace swarmnov::tasks
