#include "sentinel/enforcement.h"

#include <algorithm>
#include <cmath>

#include "sentinel/dynamics.h"

namespace sentinel {

namespace {
const double kPursuitCos = std::cos(kPursuitToleranceDeg * kPi / 180.0);
constexpr double kContactEps = 1e-9;
}  // namespace

bool heads_toward(Point2 from, Vec2 moved, Point2 target) {
  const Vec2 want = target - from;
  const double a = norm(moved);
  const double b = norm(want);
  if (a <= 0.0 || b <= 0.0) return false;
  return dot(moved, want) / (a * b) >= kPursuitCos - 1e-12;
}

Observation observe_drone(const Drone& drone, const WorldState& world, const SimConfig& cfg) {
  Observation obs;
  obs.drone_id = drone.id;
  const Point2 from = drone.last_position;

  const Enemy* nearest = nullptr;
  double best = 0.0;
  for (const auto& e : world.enemies) {
    const double d = distance(from, e.position);
    if (!nearest || d < best || (d == best && e.id < nearest->id)) {
      nearest = &e;
      best = d;
    }
  }
  if (!nearest) return obs;

  obs.nearest_enemy_distance = best;
  if (best <= cfg.detection_radius) {
    obs.pursuing = best <= kContactEps || heads_toward(from, drone.last_displacement(), nearest->position);
  }
  return obs;
}

std::vector<Observation> observe(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg) {
  std::vector<Observation> out;
  for (const auto& d : world.drones) {
    if (distance(ea.position, d.position) <= cfg.ea_monitor_radius) out.push_back(observe_drone(d, world, cfg));
  }
  return out;
}

std::vector<int> entry_point_alerts(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg) {
  std::vector<int> ids;
  for (const auto& e : world.enemies) {
    if (e.spawned_at == world.tick() && distance(ea.position, e.position) <= cfg.ea_monitor_radius) {
      ids.push_back(e.id);
    }
  }
  return ids;
}

EnforcementAgentState update_suspicion(EnforcementAgentState ea, const std::vector<Observation>& observations,
                                       const SimConfig& cfg, int current_step) {
  for (const auto& obs : observations) {
    const bool threatened = obs.nearest_enemy_distance && *obs.nearest_enemy_distance <= cfg.detection_radius;
    int& count = ea.suspicion[obs.drone_id];
    count = threatened && !obs.pursuing ? count + 1 : 0;
  }
  if (!ea.pursuit()) {
    // std::map iterates in id order, so the first hit is the lowest id.
    for (const auto& [drone_id, count] : ea.suspicion) {
      if (count >= cfg.suspicion_threshold) {
        ea.mode = PursueMode{drone_id, current_step};
        break;
      }
    }
  }
  return ea;
}

Vec2 ea_policy(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg) {
  if (const auto* p = ea.pursuit()) {
    const Drone* suspect = world.find_drone(p->drone_id);
    if (!suspect || distance(ea.position, suspect->position) <= cfg.reform_radius) return {};
    return seek(ea.position, suspect->position, cfg.drone_speed);
  }
  return orbit_move(ea.position, cfg.center, cfg.ea_orbit_radius, cfg.drone_speed, Arc{}, 1).velocity;
}

std::pair<WorldState, EnforcementAgentState> attempt_reformation(EnforcementAgentState ea, WorldState world,
                                                                 const SimConfig& cfg) {
  const auto* p = ea.pursuit();
  if (!p) return {std::move(world), std::move(ea)};
  const int suspect_id = p->drone_id;
  Drone* suspect = world.find_drone(suspect_id);

  if (!suspect || suspect->role != DroneRole::Malicious) {
    ea.mode = PatrolMode{};
    return {std::move(world), std::move(ea)};
  }
  if (distance(ea.position, suspect->position) > cfg.reform_radius) return {std::move(world), std::move(ea)};

  suspect->role = DroneRole::Reformed;
  auto release = [suspect_id](EnforcementAgentState& agent) {
    agent.suspicion.erase(suspect_id);
    if (const auto* q = agent.pursuit(); q && q->drone_id == suspect_id) agent.mode = PatrolMode{};
  };
  for (auto& other : world.eas) release(other);
  release(ea);
  world.events.push_back({world.tick(), EventKind::Reformation, suspect_id, ea.id});
  return {std::move(world), std::move(ea)};
}

StatusReport report(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg) {
  StatusReport r;
  r.step = world.tick();
  r.ea_id = ea.id;
  r.suspicion_snapshot = ea.suspicion;
  r.reformed_so_far = world.count_role(DroneRole::Reformed);
  r.live_enemies = static_cast<int>(world.enemies.size());
  if (cfg.failsafe_enabled) {
    if (const auto* p = ea.pursuit()) {
      r.failsafe_triggered = world.tick() - p->since_step > 4 * cfg.suspicion_threshold;
    }
  }
  return r;
}

std::pair<WorldState, std::vector<StatusReport>> run_enforcement(WorldState world, const SimConfig& cfg) {
  const int tick = world.tick();
  std::vector<StatusReport> reports;
  reports.reserve(world.eas.size());

  for (std::size_t i = 0; i < world.eas.size(); ++i) {
    EnforcementAgentState ea = world.eas[i];

    // (1) entry points
    for (int enemy_id : entry_point_alerts(ea, world, cfg)) {
      world.events.push_back({tick, EventKind::EntryPoint, enemy_id, ea.id});
    }

    // (2) observe, (3) detect
    const bool was_patrolling = ea.pursuit() == nullptr;
    const auto observations = observe(ea, world, cfg);
    ea = update_suspicion(std::move(ea), observations, cfg, tick);
    if (const auto* p = ea.pursuit(); p && was_patrolling) {
      world.events.push_back({tick, EventKind::SuspicionRaised, p->drone_id, ea.id});
    }

    ea.position = clamp_to_map(ea.position + ea_policy(ea, world, cfg), cfg);

    // (4) intervene
    if (ea.pursuit()) {
      auto [w, agent] = attempt_reformation(std::move(ea), std::move(world), cfg);
      world = std::move(w);
      ea = std::move(agent);
    }
    world.eas[i] = ea;

    // (5) report
    StatusReport r = report(world.eas[i], world, cfg);
    if (r.failsafe_triggered) {
      world.events.push_back({tick, EventKind::Failsafe, world.eas[i].pursuit()->drone_id, ea.id});
    }
    reports.push_back(std::move(r));
  }
  return {std::move(world), std::move(reports)};
}

}  // namespace sentinel
