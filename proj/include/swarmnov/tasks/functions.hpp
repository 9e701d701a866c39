#pragma once

#include <span>
#include <vector>

#include "swarmnov/novelty.hpp"
#include "swarmnov/sim/world.hpp"
#include "swarmnov/tasks/metrics.hpp"

namespace swarmnov::tasks {

using novelty::Descriptor;

sim::Vec2 centre_of_mass(std::span<const sim::Vec2> positions);
// Mean distance to the centre of mass divided by d_max.
double normalised_dispersion(std::span<const sim::Vec2> positions, double d_max);
// Connected components of the graph linking robots closer than range.
std::size_t count_clusters(std::span<const sim::Vec2> positions, double range);

// 1 - mean normalised distance to the final centre of mass.
double fitness_aggregation_trial(std::span<const sim::Vec2> final_positions, double d_max);
// Harmonic mean; 0 if any value is 0.
double combine_harmonic(std::span<const double> values);
double combine_arithmetic(std::span<const double> values);

Descriptor char_bcm(const TrialMetrics& m);
Descriptor char_bcl(const TrialMetrics& m, double cluster_range = 0.25);
Descriptor char_bcmcl(const TrialMetrics& m, double cluster_range = 0.25);

// 0.9 |a_T| / N + 0.1 sum_t sum_i e_it / (T N e_max)
double fitness_resource_trial(const TrialMetrics& m);
// (survivor fraction, mean over alive ticks of the mean alive energy / e_max)
Descriptor char_bsimple(const TrialMetrics& m);
// bsimple ++ (alive-average speed / s_max, alive-average station distance / d_max)
Descriptor char_bextra(const TrialMetrics& m);

}  // namespace swarmnov::tasks
