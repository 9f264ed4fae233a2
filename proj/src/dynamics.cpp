#include "sentinel/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sentinel/enforcement.h"

namespace sentinel {

namespace {
// Positions within this of the patrol circle count as on it.
constexpr double kOnCircleEps = 1e-9;
}  // namespace

Arc sector_arc(int sector_index, int total_drones) {
  return Arc{kTwoPi * sector_index / total_drones, kPi / total_drones};
}

OrbitMove orbit_move(Point2 position, Point2 center, double radius, double speed, Arc arc, int direction) {
  const bool full_circle = arc.half_width >= kPi;
  const Vec2 rel = position - center;
  const double r = norm(rel);
  const double angle = r > 0.0 ? std::atan2(rel.y, rel.x) : arc.mid;
  const double offset = wrap_angle(angle - arc.mid);
  const bool on_arc = std::abs(r - radius) <= kOnCircleEps && (full_circle || std::abs(offset) <= arc.half_width + kOnCircleEps);

  if (!on_arc) {
    const double clamped = full_circle ? offset : std::clamp(offset, -arc.half_width, arc.half_width);
    const Point2 target = center + unit_at(arc.mid + clamped) * radius;
    return {seek(position, target, speed), direction};
  }

  // Advance by `speed` of arc length. The chord is shorter than the arc.
  const double start = std::clamp(offset, -arc.half_width, arc.half_width);
  double next = (full_circle ? offset : start) + direction * (speed / radius);
  if (!full_circle) {
    if (next > arc.half_width) {
      next = std::max(2.0 * arc.half_width - next, -arc.half_width);
      direction = -1;
    } else if (next < -arc.half_width) {
      next = std::min(-2.0 * arc.half_width - next, arc.half_width);
      direction = 1;
    }
  }
  const Point2 target = center + unit_at(arc.mid + next) * radius;
  return {target - position, direction};
}

bool is_spawn_step(int step_index, const SimConfig& cfg) {
  return step_index >= cfg.first_spawn_step && (step_index - cfg.first_spawn_step) % cfg.enemy_spawn_period == 0;
}

int spawns_by(int step_index, const SimConfig& cfg) {
  const int first = std::max(cfg.first_spawn_step, 1);
  if (step_index < first) return 0;
  // Smallest scheduled step >= first.
  int k0 = cfg.first_spawn_step;
  if (k0 < first) k0 += ((first - k0 + cfg.enemy_spawn_period - 1) / cfg.enemy_spawn_period) * cfg.enemy_spawn_period;
  if (step_index < k0) return 0;
  return (step_index - k0) / cfg.enemy_spawn_period + 1;
}

Point2 perimeter_point(double u, double map_size) {
  const double t = u * 4.0 * map_size;
  const int side = std::min(static_cast<int>(t / map_size), 3);
  const double s = t - side * map_size;
  switch (side) {
    case 0: return {s, 0.0};
    case 1: return {map_size, s};
    case 2: return {map_size - s, map_size};
    default: return {0.0, map_size - s};
  }
}

WorldState spawn_enemies(WorldState world, const SimConfig& cfg, Rng& rng) {
  const int tick = world.tick();
  if (!is_spawn_step(tick, cfg)) return world;
  Enemy e;
  e.id = world.enemies_spawned++;
  e.position = perimeter_point(rng.uniform01(), cfg.map_size);
  e.spawned_at = tick;
  world.enemies.push_back(e);
  world.events.push_back({tick, EventKind::Spawn, e.id, -1});
  return world;
}

Vec2 enemy_policy(const Enemy& enemy, const SimConfig& cfg) {
  return seek(enemy.position, cfg.center, cfg.enemy_speed);
}

DroneIntent patrol_intent(const Drone& drone, const SimConfig& cfg) {
  const auto move = orbit_move(drone.position, cfg.center, cfg.patrol_radius, cfg.drone_speed,
                               sector_arc(drone.sector_index, cfg.total_drones), drone.patrol_dir);
  return DroneIntent{move.velocity, std::nullopt, move.direction};
}

const Enemy* nearest_enemy_within(const WorldState& world, Point2 from, double radius) {
  const Enemy* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& e : world.enemies) {
    const double d = distance(from, e.position);
    if (d > radius) continue;
    if (d < best_d || (d == best_d && best && e.id < best->id)) {
      best = &e;
      best_d = d;
    }
  }
  return best;
}

DroneIntent compliant_policy(const Drone& drone, const WorldState& world, const SimConfig& cfg) {
  if (const Enemy* target = nearest_enemy_within(world, drone.position, cfg.detection_radius)) {
    return DroneIntent{seek(drone.position, target->position, cfg.drone_speed), target->id, drone.patrol_dir};
  }
  return patrol_intent(drone, cfg);
}

DroneIntent malicious_policy(const Drone& drone, const WorldState&, const SimConfig& cfg) {
  return patrol_intent(drone, cfg);
}

DroneIntent drone_policy(const Drone& drone, const WorldState& world, const SimConfig& cfg) {
  return drone.role == DroneRole::Malicious ? malicious_policy(drone, world, cfg) : compliant_policy(drone, world, cfg);
}

WorldState resolve_interceptions(WorldState world, const SimConfig& cfg) {
  const int tick = world.tick();
  std::vector<Enemy> survivors;
  survivors.reserve(world.enemies.size());
  for (const auto& e : world.enemies) {
    const Drone* hunter = nullptr;
    for (const auto& d : world.drones) {
      if (d.engages() && distance(d.position, e.position) <= cfg.intercept_radius) {
        hunter = &d;
        break;
      }
    }
    if (hunter) {
      ++world.enemies_destroyed;
      world.events.push_back({tick, EventKind::Interception, e.id, hunter->id});
    } else {
      survivors.push_back(e);
    }
  }
  world.enemies = std::move(survivors);
  for (auto& d : world.drones) {
    if (d.target_enemy && std::none_of(world.enemies.begin(), world.enemies.end(),
                                       [&](const Enemy& e) { return e.id == *d.target_enemy; })) {
      d.target_enemy.reset();
    }
  }
  return world;
}

Point2 clamp_to_map(Point2 p, const SimConfig& cfg) {
  return {std::clamp(p.x, 0.0, cfg.map_size), std::clamp(p.y, 0.0, cfg.map_size)};
}

StepOutcome step(WorldState world, const SimConfig& cfg, Rng& rng) {
  if (world.outcome) throw SteppingTerminatedEpisode();
  const int tick = world.tick();

  world = spawn_enemies(std::move(world), cfg, rng);

  std::vector<DroneIntent> intents;
  intents.reserve(world.drones.size());
  for (const auto& d : world.drones) intents.push_back(drone_policy(d, world, cfg));
  for (std::size_t i = 0; i < world.drones.size(); ++i) {
    auto& d = world.drones[i];
    d.last_position = d.position;
    d.position = clamp_to_map(d.position + intents[i].velocity, cfg);
    d.target_enemy = intents[i].target_enemy;
    d.patrol_dir = intents[i].patrol_dir;
  }

  auto [enforced, reports] = run_enforcement(std::move(world), cfg);
  world = std::move(enforced);

  for (auto& e : world.enemies) e.position = clamp_to_map(e.position + enemy_policy(e, cfg), cfg);

  world = resolve_interceptions(std::move(world), cfg);

  world.step = tick;

  const bool failsafe = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.failsafe_triggered; });
  if (breach_occurred(world, cfg)) {
    for (const auto& e : world.enemies) {
      if (distance(e.position, cfg.center) <= cfg.center_radius) {
        world.events.push_back({tick, EventKind::Breach, e.id, -1});
      }
    }
    world.outcome = Outcome::Fail;
  } else if (failsafe) {
    world.outcome = Outcome::Fail;
  } else if (world.step >= cfg.time_limit_steps) {
    world.outcome = Outcome::Success;
  }

  StepOutcome out{std::move(world), std::nullopt, std::move(reports)};
  out.terminated = out.world.outcome;
  return out;
}

}  // namespace sentinel
