#include "swarmnov/tasks/functions.hpp"

#include <algorithm>
#include <numeric>

#include "swarmnov/errors.hpp"

namespace swarmnov::tasks {

std::size_t TrialMetrics::survivors() const {
  if (ticks == 0 || alive.empty()) return 0;
  const std::size_t last = (ticks - 1) * swarm_size;
  return static_cast<std::size_t>(std::count(alive.begin() + static_cast<std::ptrdiff_t>(last),
                                             alive.begin() + static_cast<std::ptrdiff_t>(last + swarm_size), 1));
}

sim::Vec2 centre_of_mass(std::span<const sim::Vec2> positions) {
  sim::Vec2 c;
  for (const auto& p : positions) {
    c.x += p.x;
    c.y += p.y;
  }
  const auto n = static_cast<double>(positions.size());
  return {c.x / n, c.y / n};
}

double normalised_dispersion(std::span<const sim::Vec2> positions, double d_max) {
  if (positions.empty()) return 0.0;
  const auto c = centre_of_mass(positions);
  double sum = 0.0;
  for (const auto& p : positions) sum += sim::distance(c, p) / d_max;
  return std::clamp(sum / static_cast<double>(positions.size()), 0.0, 1.0);
}

std::size_t count_clusters(std::span<const sim::Vec2> positions, double range) {
  const std::size_t n = positions.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sim::distance(positions[i], positions[j]) >= range) continue;
      const auto a = find(i), b = find(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

double fitness_aggregation_trial(std::span<const sim::Vec2> final_positions, double d_max) {
  return 1.0 - normalised_dispersion(final_positions, d_max);
}

double combine_harmonic(std::span<const double> values) {
  if (values.empty()) throw ConfigError("cannot combine zero trials");
  double inv = 0.0;
  for (double v : values) {
    if (v <= 0.0) return 0.0;
    inv += 1.0 / v;
  }
  return static_cast<double>(values.size()) / inv;
}

double combine_arithmetic(std::span<const double> values) {
  if (values.empty()) throw ConfigError("cannot combine zero trials");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

Descriptor char_bcm(const TrialMetrics& m) {
  Descriptor out;
  out.reserve(m.sampled_positions.size());
  for (const auto& sample : m.sampled_positions) out.push_back(normalised_dispersion(sample, m.d_max));
  return out;
}

Descriptor char_bcl(const TrialMetrics& m, double cluster_range) {
  Descriptor out;
  out.reserve(m.sampled_positions.size());
  for (const auto& sample : m.sampled_positions) {
    out.push_back(static_cast<double>(count_clusters(sample, cluster_range)) / static_cast<double>(m.swarm_size));
  }
  return out;
}

Descriptor char_bcmcl(const TrialMetrics& m, double cluster_range) {
  Descriptor out = char_bcm(m);
  const Descriptor cl = char_bcl(m, cluster_range);
  out.insert(out.end(), cl.begin(), cl.end());
  return out;
}

double fitness_resource_trial(const TrialMetrics& m) {
  const auto n = static_cast<double>(m.swarm_size);
  double energy = 0.0;
  for (double e : m.energy) energy += e;
  const double denom = static_cast<double>(m.ticks) * n * m.e_max;
  return 0.9 * static_cast<double>(m.survivors()) / n + 0.1 * energy / denom;
}

namespace {

// sum over ticks with at least one robot alive of the alive-mean of values,
// divided by the number of such ticks; 0 when no tick had a live robot.
double alive_average(const TrialMetrics& m, const std::vector<double>& values, double scale) {
  double total = 0.0;
  std::size_t alive_ticks = 0;
  for (std::size_t t = 0; t < m.ticks; ++t) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.swarm_size; ++i) {
      if (!m.alive[m.at(t, i)]) continue;
      sum += values[m.at(t, i)];
      ++count;
    }
    if (count == 0) continue;
    ++alive_ticks;
    total += sum / (static_cast<double>(count) * scale);
  }
  return alive_ticks ? total / static_cast<double>(alive_ticks) : 0.0;
}

}  // namespace

Descriptor char_bsimple(const TrialMetrics& m) {
  return {static_cast<double>(m.survivors()) / static_cast<double>(m.swarm_size),
          std::clamp(alive_average(m, m.energy, m.e_max), 0.0, 1.0)};
}

Descriptor char_bextra(const TrialMetrics& m) {
  Descriptor out = char_bsimple(m);
  out.push_back(std::clamp(alive_average(m, m.speed, m.max_speed), 0.0, 1.0));
  out.push_back(std::clamp(alive_average(m, m.station_distance, m.d_max), 0.0, 1.0));
  return out;
}

}  // namespace swarmnov::tasks
