#include "swarmnov/tasks/task.hpp"

#include <string>

#include "swarmnov/errors.hpp"

namespace swarmnov::tasks {

std::string_view to_string(Task t) { return t == Task::kAggregation ? "aggregation" : "resource"; }

std::string_view to_string(Characterisation c) {
  switch (c) {
    case Characterisation::kBcm: return "bcm";
    case Characterisation::kBcl: return "bcl";
    case Characterisation::kBcmcl: return "bcmcl";
    case Characterisation::kBsimple: return "bsimple";
    case Characterisation::kBextra: return "bextra";
  }
  return "bcm";
}

Task parse_task(std::string_view name) {
  if (name == "aggregation") return Task::kAggregation;
  if (name == "resource") return Task::kResourceSharing;
  throw ConfigError("unknown task '" + std::string(name) + "' (expected aggregation | resource)");
}

Characterisation parse_characterisation(std::string_view name) {
  for (auto c : {Characterisation::kBcm, Characterisation::kBcl, Characterisation::kBcmcl, Characterisation::kBsimple,
                 Characterisation::kBextra}) {
    if (name == to_string(c)) return c;
  }
  throw ConfigError("unknown characterisation '" + std::string(name) + "'");
}

bool compatible(Task t, Characterisation c) {
  const bool spatial = c == Characterisation::kBcm || c == Characterisation::kBcl || c == Characterisation::kBcmcl;
  return (t == Task::kAggregation) == spatial;
}

TaskConfig TaskConfig::defaults(Task task, Characterisation characterisation) {
  TaskConfig c;
  c.task = task;
  c.characterisation = characterisation;
  c.sim = task == Task::kAggregation ? sim::SimConfig::aggregation() : sim::SimConfig::resource_sharing();
  return c;
}

std::size_t TaskConfig::descriptor_length() const {
  switch (characterisation) {
    case Characterisation::kBcm:
    case Characterisation::kBcl: return sample_count();
    case Characterisation::kBcmcl: return 2 * sample_count();
    case Characterisation::kBsimple: return 2;
    case Characterisation::kBextra: return 4;
  }
  return 0;
}

void TaskConfig::validate() const {
  sim.validate();
  if (!compatible(task, characterisation)) {
    throw ConfigError("characterisation '" + std::string(to_string(characterisation)) +
                      "' does not apply to task '" + std::string(to_string(task)) + "'");
  }
  const bool resource_sim = sim.layout == sim::SensorLayout::kResourceSharing && sim.energy_enabled;
  const bool aggregation_sim = sim.layout == sim::SensorLayout::kAggregation && !sim.energy_enabled;
  if (task == Task::kResourceSharing ? !resource_sim : !aggregation_sim) {
    throw ConfigError("sensor layout / energy model do not match the task");
  }
  if (sample_interval_ticks < 1 || sim.steps % sample_interval_ticks != 0) {
    throw ConfigError("steps must be a positive multiple of sample_interval_ticks");
  }
  if (!(cluster_range > 0.0)) throw ConfigError("cluster_range must be positive");
}

}  // namespace swarmnov::tasks
