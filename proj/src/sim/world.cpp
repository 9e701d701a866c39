#include "swarmnov/sim/world.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "swarmnov/errors.hpp"
#include "swarmnov/random.hpp"

namespace swarmnov::sim {

namespace {

constexpr double kSector = std::numbers::pi / 4.0;
constexpr int kMaxPlacementRejections = 100000;

// Sector index of a bearing relative to the heading; sector i is centred at i * 45 degrees.
int sector_of(double local_x, double local_y) {
  double angle = std::atan2(local_y, local_x);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  int s = static_cast<int>((angle + kSector / 2.0) / kSector);
  return s & 7;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

SimConfig SimConfig::aggregation() { return SimConfig{}; }

SimConfig SimConfig::resource_sharing() {
  SimConfig c;
  c.swarm_size = 5;
  c.layout = SensorLayout::kResourceSharing;
  c.energy_enabled = true;
  return c;
}

void SimConfig::validate() const {
  const double r = robot_radius();
  if (!(arena_side > robot_diameter)) throw ConfigError("arena_side must exceed the robot diameter");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (steps < 1) throw ConfigError("steps must be positive");
  if (!(max_speed > 0.0)) throw ConfigError("max_speed must be positive");
  if (!(obstacle_range > r && robot_range > r && station_range > r)) {
    throw ConfigError("sensor ranges must exceed the robot radius");
  }
  if (swarm_size < 1) throw ConfigError("swarm_size must be at least 1");
  if (min_separation < 0.0) throw ConfigError("min_separation must be non-negative");
  if (energy.capacity <= 0.0) throw ConfigError("energy capacity must be positive");
  if (collision_iterations < 5) throw ConfigError("collision_iterations must be at least 5");
}

std::size_t World::alive_count() const {
  return static_cast<std::size_t>(std::count_if(robots.begin(), robots.end(), [](const RobotState& r) { return r.alive; }));
}

World place_robots(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  World world;
  world.config = config;
  const double lo = config.robot_radius();
  const double hi = config.arena_side - config.robot_radius();
  const double min_d2 = config.min_separation * config.min_separation;
  int rejections = 0;
  for (int i = 0; i < config.swarm_size; ++i) {
    while (true) {
      Vec2 p{uniform(rng, lo, hi), uniform(rng, lo, hi)};
      const bool clear = std::all_of(world.robots.begin(), world.robots.end(), [&](const RobotState& r) {
        const double dx = r.position.x - p.x, dy = r.position.y - p.y;
        return dx * dx + dy * dy >= min_d2;
      });
      if (clear) {
        RobotState robot;
        robot.position = p;
        robot.heading = uniform(rng, -std::numbers::pi, std::numbers::pi);
        robot.energy = config.energy.capacity;
        world.robots.push_back(robot);
        break;
      }
      if (++rejections > kMaxPlacementRejections) {
        throw ConfigError("cannot place " + std::to_string(config.swarm_size) + " robots at separation " +
                          std::to_string(config.min_separation) + " m: arena too crowded");
      }
    }
  }
  return world;
}

SensorReadings sense(const World& world, std::size_t index) {
  const auto& cfg = world.config;
  const auto& self = world.robots[index];
  SensorReadings out;
  out.obstacle.fill(1.0);
  out.robot.fill(1.0);
  out.station.fill(1.0);

  const double c = std::cos(self.heading);
  const double s = std::sin(self.heading);
  const double robot_r2 = cfg.robot_range * cfg.robot_range;
  const double obstacle_r2 = cfg.obstacle_range * cfg.obstacle_range;

  int nearby = cfg.count_includes_self ? 1 : 0;
  for (std::size_t j = 0; j < world.robots.size(); ++j) {
    const auto& other = world.robots[j];
    if (j == index || !other.alive) continue;
    const double dx = other.position.x - self.position.x;
    const double dy = other.position.y - self.position.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 >= robot_r2 && d2 >= obstacle_r2) continue;
    const double d = std::sqrt(d2);
    const int sector = sector_of(dx * c + dy * s, -dx * s + dy * c);
    if (d2 < robot_r2) {
      ++nearby;
      out.robot[sector] = std::min(out.robot[sector], d / cfg.robot_range);
    }
    if (d2 < obstacle_r2) out.obstacle[sector] = std::min(out.obstacle[sector], d / cfg.obstacle_range);
  }
  out.count = std::min(1.0, static_cast<double>(nearby) / static_cast<double>(cfg.swarm_size));

  // Walls, ray-cast from the centre along each sector's centreline.
  const auto [px, py] = self.position;
  const double side = cfg.arena_side;
  const double range = cfg.obstacle_range;
  if (px < range || py < range || side - px < range || side - py < range) {
    constexpr double kCos45 = std::numbers::sqrt2 / 2.0;
    double dx = c, dy = s;
    for (int i = 0; i < 8; ++i) {
      if (i > 0) {
        const double rx = dx * kCos45 - dy * kCos45;
        dy = dx * kCos45 + dy * kCos45;
        dx = rx;
      }
      double t = range;
      if (dx < -1e-12) t = std::min(t, -px / dx);
      if (dx > 1e-12) t = std::min(t, (side - px) / dx);
      if (dy < -1e-12) t = std::min(t, -py / dy);
      if (dy > 1e-12) t = std::min(t, (side - py) / dy);
      if (t < range) out.obstacle[i] = std::min(out.obstacle[i], std::max(0.0, t) / range);
    }
  }

  if (cfg.layout == SensorLayout::kResourceSharing) {
    const Vec2 st = cfg.station_position();
    const double dx = st.x - px, dy = st.y - py;
    const double d = std::hypot(dx, dy);
    if (d < cfg.station_range) {
      const int sector = sector_of(dx * c + dy * s, -dx * s + dy * c);
      out.station[sector] = d / cfg.station_range;
    }
    out.charging = self.charging ? 1.0 : 0.0;
    out.energy = std::clamp(self.energy / cfg.energy.capacity, 0.0, 1.0);
  }
  return out;
}

void encode_inputs(const SensorReadings& r, SensorLayout layout, std::span<double> out) {
  auto it = std::copy(r.obstacle.begin(), r.obstacle.end(), out.begin());
  it = std::copy(r.robot.begin(), r.robot.end(), it);
  if (layout == SensorLayout::kAggregation) {
    *it = r.count;
    return;
  }
  it = std::copy(r.station.begin(), r.station.end(), it);
  *it++ = r.charging;
  *it = r.energy;
}

WheelCommand actuate(std::span<const double> outputs, double max_speed) {
  if (outputs.size() != 3) throw ConfigError("controller must produce three outputs");
  if (outputs[2] > 0.5) return {0.0, 0.0, true};
  return {(2.0 * outputs[0] - 1.0) * max_speed, (2.0 * outputs[1] - 1.0) * max_speed, false};
}

void integrate_motion(World& world) {
  const double dt = world.config.dt;
  const double wheelbase = world.config.robot_diameter;
  for (auto& r : world.robots) {
    if (!r.alive) continue;
    const double v = 0.5 * (r.left_speed + r.right_speed);
    const double omega = (r.right_speed - r.left_speed) / wheelbase;
    r.position.x += v * std::cos(r.heading) * dt;
    r.position.y += v * std::sin(r.heading) * dt;
    r.heading = wrap_angle(r.heading + omega * dt);
  }
}

void resolve_collisions(World& world) {
  const auto& cfg = world.config;
  const double lo = cfg.robot_radius();
  const double hi = cfg.arena_side - cfg.robot_radius();
  const double diameter = cfg.robot_diameter;
  const double touching2 = (diameter - 1e-12) * (diameter - 1e-12);
  auto& robots = world.robots;
  auto clamp_to_walls = [&](Vec2& p) {
    p.x = std::clamp(p.x, lo, hi);
    p.y = std::clamp(p.y, lo, hi);
  };
  for (auto& r : robots) {
    if (r.alive) clamp_to_walls(r.position);
  }
  for (int iter = 0; iter < cfg.collision_iterations; ++iter) {
    bool overlap = false;
    for (std::size_t i = 0; i < robots.size(); ++i) {
      if (!robots[i].alive) continue;
      for (std::size_t j = i + 1; j < robots.size(); ++j) {
        if (!robots[j].alive) continue;
        auto& a = robots[i].position;
        auto& b = robots[j].position;
        double dx = b.x - a.x, dy = b.y - a.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 >= touching2) continue;
        overlap = true;
        double d = std::sqrt(d2);
        if (d < 1e-12) {
          dx = 1.0;
          dy = 0.0;
          d = 0.0;
        } else {
          dx /= d;
          dy /= d;
        }
        // Each robot moves half the overlap along the normal; whatever a wall
        // takes away from the first is handed to the second.
        const double push = 0.5 * (diameter - d);
        a.x -= dx * push;
        a.y -= dy * push;
        clamp_to_walls(a);
        b.x = a.x + dx * diameter;
        b.y = a.y + dy * diameter;
        clamp_to_walls(b);
      }
    }
    if (!overlap) break;
  }
}

void update_energy(World& world) {
  const auto& cfg = world.config;
  const auto& model = cfg.energy;
  const double dt = cfg.dt;
  const Vec2 station = cfg.station_position();

  // The station holds a single robot: the eligible robot closest to its centre.
  std::size_t occupant = world.robots.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    const auto& r = world.robots[i];
    if (!r.alive || r.left_speed != 0.0 || r.right_speed != 0.0) continue;
    const double d = distance(r.position, station);
    if (d <= model.station_radius && d < best) {
      best = d;
      occupant = i;
    }
  }
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    auto& r = world.robots[i];
    r.charging = false;
    if (!r.alive) continue;
    double delta = -model.drain(r.left_speed, r.right_speed, cfg.max_speed) * dt;
    if (i == occupant) {
      delta += model.charge_rate * dt;
      r.charging = true;
    }
    r.energy = std::min(model.capacity, r.energy + delta);
    if (r.energy <= 0.0) {
      r.energy = 0.0;
      r.alive = false;
      r.charging = false;
      r.left_speed = r.right_speed = 0.0;
    }
  }
}

void step(World& world, std::span<const WheelCommand> commands) {
  if (commands.size() != world.robots.size()) throw ConfigError("one wheel command per robot required");
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto& r = world.robots[i];
    if (!r.alive) continue;
    r.left_speed = commands[i].left;
    r.right_speed = commands[i].right;
    r.stopped = commands[i].stopped;
  }
  integrate_motion(world);
  resolve_collisions(world);
  if (world.config.energy_enabled) update_energy(world);
  ++world.tick;
}

}  // namespace swarmnov::sim
