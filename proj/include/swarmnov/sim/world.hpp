#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace swarmnov::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct EnergyModel {
  double capacity = 1000.0;
  double idle_drain = 5.0;         // units/s with motors off
  double full_speed_drain = 10.0;  // units/s with both motors at max speed
  double charge_rate = 100.0;      // units/s
  double station_radius = 0.04;

  // Linear in the mean absolute wheel speed.
  double drain(double left, double right, double max_speed) const {
    return idle_drain + (full_speed_drain - idle_drain) * (std::abs(left) + std::abs(right)) / (2.0 * max_speed);
  }
};

enum class SensorLayout {
  kAggregation,      // 8 obstacle, 8 robot, count                         = 17
  kResourceSharing,  // 8 obstacle, 8 robot, 8 station, charging, energy   = 26
};

struct SimConfig {
  double arena_side = 3.0;
  double dt = 0.1;
  int steps = 2500;
  double robot_diameter = 0.08;
  double max_speed = 0.12;
  double obstacle_range = 0.10;
  double robot_range = 0.25;
  double station_range = 1.0;
  double min_separation = 0.50;
  int swarm_size = 7;
  SensorLayout layout = SensorLayout::kAggregation;
  bool energy_enabled = false;
  EnergyModel energy;
  bool count_includes_self = true;
  // Pairwise relaxation passes; stops early once nothing overlaps.
  int collision_iterations = 64;

  static SimConfig aggregation();
  static SimConfig resource_sharing();

  double robot_radius() const { return robot_diameter / 2.0; }
  double half_diagonal() const { return arena_side * std::sqrt(2.0) / 2.0; }
  Vec2 station_position() const { return {arena_side / 2.0, arena_side / 2.0}; }
  std::size_t input_count() const { return layout == SensorLayout::kAggregation ? 17 : 26; }

  // Throws ConfigError.
  void validate() const;
};

struct RobotState {
  Vec2 position;
  double heading = 0.0;
  double left_speed = 0.0;
  double right_speed = 0.0;
  bool stopped = false;
  double energy = 0.0;
  bool alive = true;
  bool charging = false;
};

struct WheelCommand {
  double left = 0.0;
  double right = 0.0;
  bool stopped = false;
};

// Normalised readings, 1.0 meaning nothing within range.
struct SensorReadings {
  std::array<double, 8> obstacle{};
  std::array<double, 8> robot{};
  std::array<double, 8> station{};
  double count = 0.0;
  double charging = 0.0;
  double energy = 0.0;
};

struct World {
  SimConfig config;
  std::vector<RobotState> robots;
  int tick = 0;

  std::size_t alive_count() const;
};

// Rejection sampling of positions and headings; throws ConfigError after 10^5 rejections.
World place_robots(const SimConfig& config, std::uint64_t seed);

SensorReadings sense(const World& world, std::size_t robot);

// Network input vector in the layout's order.
void encode_inputs(const SensorReadings& readings, SensorLayout layout, std::span<double> out);

// outputs = (left, right, stop); stop > 0.5 halts both wheels.
WheelCommand actuate(std::span<const double> outputs, double max_speed);

// Applies commands (one per robot, ignored for dead robots), integrates
// differential-drive kinematics, resolves collisions, updates energy and
// advances the tick.
void step(World& world, std::span<const WheelCommand> commands);

void integrate_motion(World& world);
void resolve_collisions(World& world);
void update_energy(World& world);

}  // namespace swarmnov::sim
