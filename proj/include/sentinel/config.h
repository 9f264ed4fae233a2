#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sentinel/geometry.h"

namespace sentinel {

/// Every world, agent, supervision and termination parameter of an episode.
///
/// The first group mirrors the published experiment setup. The rest are
/// motion and supervision geometry with calibrated defaults; they are kept
/// configurable so calibration stays a data change.
struct SimConfig {
  // Published setup.
  int total_drones{6};
  int num_malicious{1};
  int num_eas{0};
  double map_size{120.0};
  Point2 center{60.0, 60.0};
  double center_radius{5.0};
  int enemy_spawn_period{15};
  int first_spawn_step{15};
  double detection_radius{10.0};
  int time_limit_steps{1200};
  double fps{10.0};

  // Reconstruction knobs.
  double drone_speed{3.0};
  double enemy_speed{1.0};
  double intercept_radius{2.0};
  double patrol_radius{30.0};
  double ea_orbit_radius{30.0};
  double ea_monitor_radius{20.0};
  int suspicion_threshold{5};
  double reform_radius{10.0};
  bool failsafe_enabled{false};

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

SimConfig default_config();

enum class ConfigViolation {
  NoDrones,
  NegativeMaliciousCount,
  MaliciousExceedsTotal,
  NegativeEaCount,
  EasExceedTotal,
  NonPositiveMapSize,
  CenterOutsideMap,
  NonPositiveCenterRadius,
  CenterRadiusExceedsPatrolRadius,
  PatrolRadiusExceedsHalfMap,
  NonPositiveInterceptRadius,
  InterceptRadiusExceedsDetectionRadius,
  NonPositiveSpawnPeriod,
  NegativeFirstSpawnStep,
  NonPositiveTimeLimit,
  NonPositiveFps,
  NonPositiveDroneSpeed,
  NonPositiveEnemySpeed,
  NonPositiveOrbitRadius,
  NonPositiveMonitorRadius,
  NonPositiveReformRadius,
  NonPositiveSuspicionThreshold,
};

std::string_view to_string(ConfigViolation v);

/// All broken invariants of `cfg`, in a fixed order. Empty means valid.
std::vector<ConfigViolation> check(const SimConfig& cfg);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigViolation> violations);
  explicit ConfigError(const std::string& message);

  const std::vector<ConfigViolation>& violations() const { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

/// Returns `cfg` unchanged, or throws ConfigError naming every violation.
SimConfig validate(const SimConfig& cfg);

/// Sets one field from its textual key and value. Throws ConfigError on an
/// unknown key or a malformed value.
void set_config_value(SimConfig& cfg, std::string_view key, std::string_view value);

/// Ordered (key, value) pairs for every field; the inverse of
/// set_config_value.
std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg);

/// Flat `key = value` text. `#` starts a comment; blank lines are skipped.
/// Keys not set in the text keep the values of `base`. The result is not
/// validated.
SimConfig parse_config(std::istream& in, SimConfig base = default_config());
SimConfig load_config_file(const std::filesystem::path& path, SimConfig base = default_config());

}  // namespace sentinel
