#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sentinel/config.h"
#include "sentinel/geometry.h"
#include "sentinel/world.h"

namespace sentinel {

// Half-angle of the cone a displacement must fall in to count as pursuit.
inline constexpr double kPursuitToleranceDeg = 15.0;

struct Observation {
  int drone_id{0};
  std::optional<double> nearest_enemy_distance;
  bool pursuing{false};

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct StatusReport {
  int step{0};
  int ea_id{0};
  std::map<int, int> suspicion_snapshot;
  int reformed_so_far{0};
  int live_enemies{0};
  bool failsafe_triggered{false};
};

/// Whether displacement `moved` heads toward `target` as seen from `from`.
bool heads_toward(Point2 from, Vec2 moved, Point2 target);

/// Behavior of one drone as seen by a supervisor.
///
/// Threat and heading are measured from where the drone stood when it chose
/// its last move, against the live enemies.
Observation observe_drone(const Drone& drone, const WorldState& world, const SimConfig& cfg);

/// Observations of every drone within ea_monitor_radius of the EA, in id order.
std::vector<Observation> observe(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg);

/// Ids of enemies spawned in the current step within ea_monitor_radius.
std::vector<int> entry_point_alerts(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg);

/// Counts consecutive violations (threat in range and no pursuit) per
/// observed drone and resets on compliance. A Patrol EA switches to
/// Pursue(lowest id at threshold); `current_step` stamps the pursuit.
EnforcementAgentState update_suspicion(EnforcementAgentState ea, const std::vector<Observation>& observations,
                                       const SimConfig& cfg, int current_step);

Vec2 ea_policy(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg);

/// Reforms the pursued drone once within reform_radius. On success the
/// drone leaves every EA's suspicion map and every EA pursuing it goes back
/// to Patrol.
std::pair<WorldState, EnforcementAgentState> attempt_reformation(EnforcementAgentState ea, WorldState world,
                                                                 const SimConfig& cfg);

StatusReport report(const EnforcementAgentState& ea, const WorldState& world, const SimConfig& cfg);

/// Runs every EA through observe, detect, move, intervene, report in id
/// order, logging events into the world. Used by step().
std::pair<WorldState, std::vector<StatusReport>> run_enforcement(WorldState world, const SimConfig& cfg);

}  // namespace sentinel
