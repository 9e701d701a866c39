#include "swarmnov/experiment/config.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "swarmnov/errors.hpp"
#include "swarmnov/io.hpp"

namespace swarmnov::experiment {

using nlohmann::json;

namespace {

// Reads optional fields out of one JSON object, collecting type errors and
// flagging keys nobody asked for.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) errors_.push_back(path_ + ": expected an object");
  }

  ~FieldReader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) errors_.push_back(name(key) + ": unknown field");
    }
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    seen_.insert(key);
    if (!obj_.is_object() || !obj_.contains(key)) return;
    const json& v = obj_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) return fail(key, "expected a boolean");
      target = v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0 && !v.is_number_unsigned())) {
        return fail(key, std::is_unsigned_v<T> ? "expected a non-negative integer" : "expected an integer");
      }
      target = v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) return fail(key, "expected a number");
      target = v.get<T>();
    } else {
      if (!v.is_string()) return fail(key, "expected a string");
      target = v.get<std::string>();
    }
  }

  // Reads a string and converts it, reporting conversion errors against the field.
  template <typename T>
  void read_enum(const std::string& key, T& target, const std::function<T(std::string_view)>& parse) {
    std::string raw;
    bool present = obj_.is_object() && obj_.contains(key);
    read(key, raw);
    if (!present || raw.empty()) return;
    try {
      target = parse(raw);
    } catch (const ConfigError& e) {
      fail(key, e.what());
    }
  }

  const json* child(const std::string& key) {
    seen_.insert(key);
    if (!obj_.is_object() || !obj_.contains(key)) return nullptr;
    return &obj_.at(key);
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  void fail(const std::string& key, const std::string& why) { errors_.push_back(name(key) + ": " + why); }

  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

void read_evolution(FieldReader& r, neat::EvolutionConfig& e) {
  r.read("population_size", e.population_size);
  r.read("generations", e.generations);
  r.read("crossover_rate", e.crossover_rate);
  r.read("mutation_rate", e.mutation_rate);
  r.read("weight_perturbation", e.weight_perturbation);
  r.read("weight_reset_rate", e.weight_reset_rate);
  r.read("weight_reset_range", e.weight_reset_range);
  r.read("initial_weight_range", e.initial_weight_range);
  r.read("add_connection_rate", e.add_connection_rate);
  r.read("add_node_rate", e.add_node_rate);
  r.read("add_connection_attempts", e.add_connection_attempts);
  r.read("excess_coefficient", e.excess_coefficient);
  r.read("disjoint_coefficient", e.disjoint_coefficient);
  r.read("weight_coefficient", e.weight_coefficient);
  r.read("initial_threshold", e.initial_threshold);
  r.read("threshold_step", e.threshold_step);
  r.read("min_threshold", e.min_threshold);
  r.read("target_species_min", e.target_species_min);
  r.read("target_species_max", e.target_species_max);
  r.read("stale_generations", e.stale_generations);
  r.read("elite_species_size", e.elite_species_size);
  r.read("survival_fraction", e.survival_fraction);
}

void read_sim(FieldReader& r, sim::SimConfig& s, tasks::TaskConfig& t) {
  r.read("arena_side", s.arena_side);
  r.read("dt", s.dt);
  r.read("steps", s.steps);
  r.read("robot_diameter", s.robot_diameter);
  r.read("max_speed", s.max_speed);
  r.read("obstacle_range", s.obstacle_range);
  r.read("robot_range", s.robot_range);
  r.read("station_range", s.station_range);
  r.read("min_separation", s.min_separation);
  r.read("swarm_size", s.swarm_size);
  r.read("count_includes_self", s.count_includes_self);
  r.read("collision_iterations", s.collision_iterations);
  r.read("sample_interval_ticks", t.sample_interval_ticks);
  r.read("cluster_range", t.cluster_range);
  r.read("energy_capacity", s.energy.capacity);
  r.read("idle_drain", s.energy.idle_drain);
  r.read("full_speed_drain", s.energy.full_speed_drain);
  r.read("charge_rate", s.energy.charge_rate);
  r.read("station_radius", s.energy.station_radius);
}

std::string join(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  - " + e;
  return out;
}

void collect_validation(const ExperimentConfig& c, std::vector<std::string>& errors) {
  auto check = [&](const char* field, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      errors.push_back(std::string(field) + ": " + e.what());
    }
  };
  check("task", [&] { c.task.validate(); });
  check("evolution", [&] { c.evolution.validate(); });
  check("novelty", [&] { c.novelty.validate(); });
  auto unit = [&](const char* field, double v) {
    if (!(v >= 0.0 && v <= 1.0)) errors.push_back(std::string(field) + ": must lie in [0, 1]");
  };
  unit("selection.percentile", c.selection.percentile);
  unit("selection.smoothing", c.selection.smoothing);
  unit("selection.rho", c.selection.rho);
  if (c.trials < 1) errors.push_back("trials: must be at least 1");
  if (c.posteval_trials < 1) errors.push_back("posteval_trials: must be at least 1");
  if (c.output_dir.empty()) errors.push_back("output_dir: must not be empty");
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults(tasks::Task task, tasks::Characterisation characterisation) {
  ExperimentConfig c;
  c.task = tasks::TaskConfig::defaults(task, characterisation);
  c.evolution.generations = task == tasks::Task::kAggregation ? 250 : 400;
  return c;
}

void validate(const ExperimentConfig& config) {
  std::vector<std::string> errors;
  collect_validation(config, errors);
  if (!errors.empty()) throw ConfigError(join(errors));
}

ExperimentConfig parse_config(const json& doc) {
  std::vector<std::string> errors;
  ExperimentConfig c;
  {
    FieldReader root(doc, "", errors);
    int version = kSchemaVersion;
    root.read("schema_version", version);
    if (version != kSchemaVersion) errors.push_back("schema_version: unsupported version " + std::to_string(version));

    tasks::Task task = tasks::Task::kAggregation;
    root.read_enum<tasks::Task>("task", task, tasks::parse_task);
    auto characterisation = task == tasks::Task::kAggregation ? tasks::Characterisation::kBcmcl
                                                              : tasks::Characterisation::kBsimple;
    root.read_enum<tasks::Characterisation>("characterisation", characterisation, tasks::parse_characterisation);
    c = ExperimentConfig::defaults(task, characterisation);

    if (const json* sel = root.child("selection")) {
      FieldReader r(*sel, "selection", errors);
      r.read_enum<selection::Policy>("policy", c.selection.policy, selection::parse_policy);
      r.read("percentile", c.selection.percentile);
      r.read("smoothing", c.selection.smoothing);
      r.read("rho", c.selection.rho);
    }
    if (const json* nov = root.child("novelty")) {
      FieldReader r(*nov, "novelty", errors);
      r.read("k", c.novelty.k);
      r.read("archive_probability", c.novelty.archive_probability);
      r.read("archive_limit", c.novelty.archive_limit);
    }
    if (const json* evo = root.child("evolution")) {
      FieldReader r(*evo, "evolution", errors);
      read_evolution(r, c.evolution);
    }
    if (const json* s = root.child("sim")) {
      FieldReader r(*s, "sim", errors);
      read_sim(r, c.task.sim, c.task);
    }
    root.read("trials", c.trials);
    root.read("posteval_trials", c.posteval_trials);
    root.read("runs", c.runs);
    root.read("seed", c.seed);
    root.read("output_dir", c.output_dir);
  }
  collect_validation(c, errors);
  if (!errors.empty()) throw ConfigError(join(errors));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const RuntimeFailure& e) {
    throw ConfigError(e.what());
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  const auto& e = c.evolution;
  const auto& s = c.task.sim;
  return {
      {"schema_version", kSchemaVersion},
      {"task", std::string(tasks::to_string(c.task.task))},
      {"characterisation", std::string(tasks::to_string(c.task.characterisation))},
      {"selection",
       {{"policy", std::string(selection::to_string(c.selection.policy))},
        {"percentile", c.selection.percentile},
        {"smoothing", c.selection.smoothing},
        {"rho", c.selection.rho}}},
      {"novelty",
       {{"k", c.novelty.k}, {"archive_probability", c.novelty.archive_probability},
        {"archive_limit", c.novelty.archive_limit}}},
      {"evolution",
       {{"population_size", e.population_size},
        {"generations", e.generations},
        {"crossover_rate", e.crossover_rate},
        {"mutation_rate", e.mutation_rate},
        {"weight_perturbation", e.weight_perturbation},
        {"weight_reset_rate", e.weight_reset_rate},
        {"weight_reset_range", e.weight_reset_range},
        {"initial_weight_range", e.initial_weight_range},
        {"add_connection_rate", e.add_connection_rate},
        {"add_node_rate", e.add_node_rate},
        {"add_connection_attempts", e.add_connection_attempts},
        {"excess_coefficient", e.excess_coefficient},
        {"disjoint_coefficient", e.disjoint_coefficient},
        {"weight_coefficient", e.weight_coefficient},
        {"initial_threshold", e.initial_threshold},
        {"threshold_step", e.threshold_step},
        {"min_threshold", e.min_threshold},
        {"target_species_min", e.target_species_min},
        {"target_species_max", e.target_species_max},
        {"stale_generations", e.stale_generations},
        {"elite_species_size", e.elite_species_size},
        {"survival_fraction", e.survival_fraction}}},
      {"sim",
       {{"arena_side", s.arena_side},
        {"dt", s.dt},
        {"steps", s.steps},
        {"robot_diameter", s.robot_diameter},
        {"max_speed", s.max_speed},
        {"obstacle_range", s.obstacle_range},
        {"robot_range", s.robot_range},
        {"station_range", s.station_range},
        {"min_separation", s.min_separation},
        {"swarm_size", s.swarm_size},
        {"count_includes_self", s.count_includes_self},
        {"collision_iterations", s.collision_iterations},
        {"sample_interval_ticks", c.task.sample_interval_ticks},
        {"cluster_range", c.task.cluster_range},
        {"energy_capacity", s.energy.capacity},
        {"idle_drain", s.energy.idle_drain},
        {"full_speed_drain", s.energy.full_speed_drain},
        {"charge_rate", s.energy.charge_rate},
        {"station_radius", s.energy.station_radius}}},
      {"trials", c.trials},
      {"posteval_trials", c.posteval_trials},
      {"runs", c.runs},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
  };
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string canonical = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

}  // namespace swarmnov::experiment
