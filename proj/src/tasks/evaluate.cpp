#include "swarmnov/tasks/evaluate.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "swarmnov/errors.hpp"
#include "swarmnov/tasks/functions.hpp"

namespace swarmnov::tasks {

TrialOutcome run_trial(const neat::Network& network, const TaskConfig& config, std::uint64_t trial_seed,
                       sim::TrajectoryLog* log) {
  if (network.input_count() != config.input_count() || network.output_count() != TaskConfig::output_count()) {
    throw ConfigError("network shape does not match the task's sensors and actuators");
  }
  sim::World world = sim::place_robots(config.sim, trial_seed);
  const auto& sc = config.sim;
  const std::size_t n = world.robots.size();
  const auto steps = static_cast<std::size_t>(sc.steps);
  const bool resource = config.task == Task::kResourceSharing;

  TrialOutcome out;
  TrialMetrics& m = out.metrics;
  m.swarm_size = n;
  m.ticks = steps;
  m.d_max = sc.half_diagonal();
  m.max_speed = sc.max_speed;
  m.e_max = sc.energy.capacity;
  m.sampled_positions.reserve(config.sample_count());
  if (resource) {
    m.alive.assign(steps * n, 0);
    m.energy.assign(steps * n, 0.0);
    m.speed.assign(steps * n, 0.0);
    m.station_distance.assign(steps * n, 0.0);
  }

  std::vector<neat::NetworkState> states(n, network.make_state());
  std::vector<double> inputs(network.input_count());
  std::array<double, 3> outputs{};
  std::vector<sim::WheelCommand> commands(n);
  std::vector<sim::Vec2> positions(n);
  const sim::Vec2 station = sc.station_position();

  if (log) log->record(world);
  for (std::size_t t = 1; t <= steps; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!world.robots[i].alive) {
        commands[i] = {};
        continue;
      }
      const auto readings = sim::sense(world, i);
      sim::encode_inputs(readings, sc.layout, inputs);
      network.activate(states[i], inputs, outputs);
      if (!std::isfinite(outputs[0]) || !std::isfinite(outputs[1]) || !std::isfinite(outputs[2])) {
        out.diverged = true;
        return out;
      }
      commands[i] = sim::actuate(outputs, sc.max_speed);
    }
    sim::step(world, commands);

    if (resource) {
      bool any_alive = false;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = world.robots[i];
        if (!r.alive) continue;
        any_alive = true;
        const std::size_t k = m.at(t - 1, i);
        m.alive[k] = 1;
        m.energy[k] = r.energy;
        m.speed[k] = std::abs(0.5 * (r.left_speed + r.right_speed));
        m.station_distance[k] = sim::distance(r.position, station);
      }
      if (log) log->record(world);
      // Remaining ticks would only record dead robots; the traces are already zero.
      if (!any_alive && log == nullptr) {
        for (std::size_t i = 0; i < n; ++i) positions[i] = world.robots[i].position;
        while (m.sampled_positions.size() < config.sample_count()) m.sampled_positions.push_back(positions);
        m.final_positions = positions;
        return out;
      }
    } else if (log) {
      log->record(world);
    }

    if (t % static_cast<std::size_t>(config.sample_interval_ticks) == 0) {
      for (std::size_t i = 0; i < n; ++i) positions[i] = world.robots[i].position;
      m.sampled_positions.push_back(positions);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    positions[i] = world.robots[i].position;
    if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y)) out.diverged = true;
  }
  m.final_positions = positions;
  return out;
}

double trial_fitness(const TrialMetrics& metrics, const TaskConfig& config) {
  if (config.task == Task::kAggregation) return fitness_aggregation_trial(metrics.final_positions, metrics.d_max);
  return fitness_resource_trial(metrics);
}

novelty::Descriptor trial_descriptor(const TrialMetrics& metrics, const TaskConfig& config) {
  switch (config.characterisation) {
    case Characterisation::kBcm: return char_bcm(metrics);
    case Characterisation::kBcl: return char_bcl(metrics, config.cluster_range);
    case Characterisation::kBcmcl: return char_bcmcl(metrics, config.cluster_range);
    case Characterisation::kBsimple: return char_bsimple(metrics);
    case Characterisation::kBextra: return char_bextra(metrics);
  }
  return {};
}

double combine_trials(std::span<const double> fitnesses, Task task) {
  return task == Task::kAggregation ? combine_harmonic(fitnesses) : combine_arithmetic(fitnesses);
}

EvaluationResult evaluate(const neat::Genome& genome, const TaskConfig& config,
                          std::span<const std::uint64_t> trial_seeds) {
  if (trial_seeds.empty()) throw ConfigError("at least one trial seed required");
  const neat::Network network(genome);
  EvaluationResult result;
  const std::size_t length = config.descriptor_length();
  result.descriptor.assign(length, 0.0);
  for (auto seed : trial_seeds) {
    auto trial = run_trial(network, config, seed);
    if (trial.diverged) {
      result = EvaluationResult{};
      result.descriptor.assign(length, 0.0);
      result.diverged = true;
      return result;
    }
    result.trial_fitnesses.push_back(trial_fitness(trial.metrics, config));
    auto d = trial_descriptor(trial.metrics, config);
    for (std::size_t k = 0; k < length; ++k) result.descriptor[k] += d[k];
    result.trial_descriptors.push_back(std::move(d));
  }
  for (auto& v : result.descriptor) v /= static_cast<double>(trial_seeds.size());
  result.fitness = combine_trials(result.trial_fitnesses, config.task);
  return result;
}

std::vector<EvaluationResult> evaluate_population(std::span<const neat::Genome> genomes, const TaskConfig& config,
                                                  std::span<const std::uint64_t> trial_seeds, unsigned workers) {
  std::vector<EvaluationResult> results(genomes.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(genomes.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < genomes.size(); ++i) results[i] = evaluate(genomes[i], config, trial_seeds);
    return results;
  }
  // Static interleaved partition; each slot is written by exactly one worker.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < genomes.size(); i += workers) results[i] = evaluate(genomes[i], config, trial_seeds);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

unsigned default_workers() {
  if (const char* env = std::getenv("SWARMNOV_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace swarmnov::tasks
