#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "sentinel/config.h"
#include "sentinel/geometry.h"
#include "sentinel/random.h"

namespace sentinel {

// Malicious -> Reformed is the only legal transition.
enum class DroneRole { Compliant, Malicious, Reformed };

std::string_view to_string(DroneRole role);

struct Drone {
  int id{0};
  Point2 position;
  // Position before the most recent move; the displacement of the last step
  // is position - last_position.
  Point2 last_position;
  DroneRole role{DroneRole::Compliant};
  int sector_index{0};
  std::optional<int> target_enemy;
  // +1 counter-clockwise, -1 clockwise along the sector arc.
  int patrol_dir{1};

  Vec2 last_displacement() const { return position - last_position; }
  bool engages() const { return role != DroneRole::Malicious; }

  friend bool operator==(const Drone&, const Drone&) = default;
};

struct Enemy {
  int id{0};
  Point2 position;
  int spawned_at{0};

  friend bool operator==(const Enemy&, const Enemy&) = default;
};

struct PatrolMode {
  friend bool operator==(PatrolMode, PatrolMode) = default;
};

struct PursueMode {
  int drone_id{0};
  int since_step{0};

  friend bool operator==(PursueMode, PursueMode) = default;
};

using EaMode = std::variant<PatrolMode, PursueMode>;

struct EnforcementAgentState {
  int id{0};
  Point2 position;
  std::map<int, int> suspicion;  // drone id -> consecutive violating observations
  EaMode mode{PatrolMode{}};

  const PursueMode* pursuit() const { return std::get_if<PursueMode>(&mode); }
  int suspicion_of(int drone_id) const;

  friend bool operator==(const EnforcementAgentState&, const EnforcementAgentState&) = default;
};

enum class EventKind { Spawn, EntryPoint, Interception, SuspicionRaised, Reformation, Breach, Failsafe };

std::string_view to_string(EventKind kind);

struct Event {
  int step{0};
  EventKind kind{EventKind::Spawn};
  int subject{-1};  // entity the event is about (enemy or drone id)
  int actor{-1};    // entity that caused it (drone or EA id), -1 if none

  friend bool operator==(const Event&, const Event&) = default;
};

enum class Outcome { Success, Fail };

std::string_view to_string(Outcome outcome);

struct WorldState {
  int step{0};
  std::vector<Drone> drones;
  std::vector<Enemy> enemies;
  std::vector<EnforcementAgentState> eas;
  int enemies_destroyed{0};
  int enemies_spawned{0};
  std::vector<Event> events;
  std::optional<Outcome> outcome;

  // The step currently being computed; events carry this index.
  int tick() const { return step + 1; }

  int count_role(DroneRole role) const;
  const Drone* find_drone(int id) const;
  Drone* find_drone(int id);

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

WorldState initial_world(const SimConfig& cfg, Rng& rng);
WorldState initial_world(const SimConfig& cfg, std::uint64_t seed);

bool breach_occurred(const WorldState& world, const SimConfig& cfg);

// Debug snapshot: one `key value...` record per line. The config is embedded
// so a snapshot can be rendered on its own. Not a stability contract.
void write_snapshot(const WorldState& world, const SimConfig& cfg, std::ostream& out);

struct Snapshot {
  WorldState world;
  SimConfig config;
};

Snapshot read_snapshot(std::istream& in);

}  // namespace sentinel
