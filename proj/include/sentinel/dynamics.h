#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sentinel/config.h"
#include "sentinel/enforcement.h"
#include "sentinel/geometry.h"
#include "sentinel/random.h"
#include "sentinel/world.h"

namespace sentinel {

/// What a drone decided for this step, computed from a pre-move snapshot.
struct DroneIntent {
  Vec2 velocity;
  std::optional<int> target_enemy;
  int patrol_dir{1};

  friend bool operator==(const DroneIntent&, const DroneIntent&) = default;
};

/// Angular window of a patrol circle; `half_width >= pi` means the full circle.
struct Arc {
  double mid{0.0};
  double half_width{kPi};
};

struct OrbitMove {
  Vec2 velocity;
  int direction{1};
};

/// One step of travel along `arc` of the circle (center, radius).
///
/// On the arc the agent advances `speed` of arc length in `direction` and
/// reflects at the arc ends. Off the arc it heads straight for the nearest
/// arc point. The chord travelled never exceeds `speed`.
OrbitMove orbit_move(Point2 position, Point2 center, double radius, double speed, Arc arc, int direction);

Arc sector_arc(int sector_index, int total_drones);

/// Whether the step that produces world index `step_index` spawns an enemy.
bool is_spawn_step(int step_index, const SimConfig& cfg);

/// Number of spawn steps in [1, step_index].
int spawns_by(int step_index, const SimConfig& cfg);

/// Uniform point on the boundary of the square map.
Point2 perimeter_point(double u, double map_size);

/// Appends an enemy on the map perimeter when the step being computed
/// (world.tick()) is on the spawn schedule.
WorldState spawn_enemies(WorldState world, const SimConfig& cfg, Rng& rng);

Vec2 enemy_policy(const Enemy& enemy, const SimConfig& cfg);

DroneIntent patrol_intent(const Drone& drone, const SimConfig& cfg);

/// Nearest live enemy within detection radius of `from`, ties to the lowest id.
const Enemy* nearest_enemy_within(const WorldState& world, Point2 from, double radius);

DroneIntent compliant_policy(const Drone& drone, const WorldState& world, const SimConfig& cfg);

/// Patrols exactly like a compliant drone but never pursues.
DroneIntent malicious_policy(const Drone& drone, const WorldState& world, const SimConfig& cfg);

/// Dispatches on role. Reformed drones use the compliant policy.
DroneIntent drone_policy(const Drone& drone, const WorldState& world, const SimConfig& cfg);

WorldState resolve_interceptions(WorldState world, const SimConfig& cfg);

Point2 clamp_to_map(Point2 p, const SimConfig& cfg);

class SteppingTerminatedEpisode : public std::logic_error {
 public:
  SteppingTerminatedEpisode() : std::logic_error("cannot step an episode that has already terminated") {}
};

struct StepOutcome {
  WorldState world;
  std::optional<Outcome> terminated;
  std::vector<StatusReport> reports;  // one per EA, in id order
};

/// Advances the world by one step:
///   1. spawn enemies
///   2. move drones (velocities from the pre-move snapshot), clamp to map
///   3. enforcement agents observe, update suspicion, move, reform, report
///   4. move enemies
///   5. resolve interceptions
///   6. increment step
///   7. Fail on breach or failsafe, Success at the time limit
StepOutcome step(WorldState world, const SimConfig& cfg, Rng& rng);

}  // namespace sentinel
