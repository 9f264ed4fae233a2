#include "sentinel/config.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

#include "format_util.h"

namespace sentinel {

SimConfig default_config() { return SimConfig{}; }

std::string_view to_string(ConfigViolation v) {
  switch (v) {
    case ConfigViolation::NoDrones: return "NoDrones";
    case ConfigViolation::NegativeMaliciousCount: return "NegativeMaliciousCount";
    case ConfigViolation::MaliciousExceedsTotal: return "MaliciousExceedsTotal";
    case ConfigViolation::NegativeEaCount: return "NegativeEaCount";
    case ConfigViolation::EasExceedTotal: return "EasExceedTotal";
    case ConfigViolation::NonPositiveMapSize: return "NonPositiveMapSize";
    case ConfigViolation::CenterOutsideMap: return "CenterOutsideMap";
    case ConfigViolation::NonPositiveCenterRadius: return "NonPositiveCenterRadius";
    case ConfigViolation::CenterRadiusExceedsPatrolRadius: return "CenterRadiusExceedsPatrolRadius";
    case ConfigViolation::PatrolRadiusExceedsHalfMap: return "PatrolRadiusExceedsHalfMap";
    case ConfigViolation::NonPositiveInterceptRadius: return "NonPositiveInterceptRadius";
    case ConfigViolation::InterceptRadiusExceedsDetectionRadius: return "InterceptRadiusExceedsDetectionRadius";
    case ConfigViolation::NonPositiveSpawnPeriod: return "NonPositiveSpawnPeriod";
    case ConfigViolation::NegativeFirstSpawnStep: return "NegativeFirstSpawnStep";
    case ConfigViolation::NonPositiveTimeLimit: return "NonPositiveTimeLimit";
    case ConfigViolation::NonPositiveFps: return "NonPositiveFps";
    case ConfigViolation::NonPositiveDroneSpeed: return "NonPositiveDroneSpeed";
    case ConfigViolation::NonPositiveEnemySpeed: return "NonPositiveEnemySpeed";
    case ConfigViolation::NonPositiveOrbitRadius: return "NonPositiveOrbitRadius";
    case ConfigViolation::NonPositiveMonitorRadius: return "NonPositiveMonitorRadius";
    case ConfigViolation::NonPositiveReformRadius: return "NonPositiveReformRadius";
    case ConfigViolation::NonPositiveSuspicionThreshold: return "NonPositiveSuspicionThreshold";
  }
  return "Unknown";
}

std::vector<ConfigViolation> check(const SimConfig& c) {
  std::vector<ConfigViolation> out;
  auto require = [&out](bool ok, ConfigViolation v) {
    if (!ok) out.push_back(v);
  };
  require(c.total_drones >= 1, ConfigViolation::NoDrones);
  require(c.num_malicious >= 0, ConfigViolation::NegativeMaliciousCount);
  require(c.num_malicious <= c.total_drones, ConfigViolation::MaliciousExceedsTotal);
  require(c.num_eas >= 0, ConfigViolation::NegativeEaCount);
  require(c.num_eas <= c.total_drones, ConfigViolation::EasExceedTotal);
  require(c.map_size > 0.0, ConfigViolation::NonPositiveMapSize);
  require(c.center.x > 0.0 && c.center.x < c.map_size && c.center.y > 0.0 && c.center.y < c.map_size,
          ConfigViolation::CenterOutsideMap);
  require(c.center_radius > 0.0, ConfigViolation::NonPositiveCenterRadius);
  require(c.center_radius < c.patrol_radius, ConfigViolation::CenterRadiusExceedsPatrolRadius);
  require(c.patrol_radius < c.map_size / 2.0, ConfigViolation::PatrolRadiusExceedsHalfMap);
  require(c.intercept_radius > 0.0, ConfigViolation::NonPositiveInterceptRadius);
  require(c.detection_radius > c.intercept_radius, ConfigViolation::InterceptRadiusExceedsDetectionRadius);
  require(c.enemy_spawn_period > 0, ConfigViolation::NonPositiveSpawnPeriod);
  require(c.first_spawn_step >= 0, ConfigViolation::NegativeFirstSpawnStep);
  require(c.time_limit_steps > 0, ConfigViolation::NonPositiveTimeLimit);
  require(c.fps > 0.0, ConfigViolation::NonPositiveFps);
  require(c.drone_speed > 0.0, ConfigViolation::NonPositiveDroneSpeed);
  require(c.enemy_speed > 0.0, ConfigViolation::NonPositiveEnemySpeed);
  require(c.ea_orbit_radius > 0.0, ConfigViolation::NonPositiveOrbitRadius);
  require(c.ea_monitor_radius > 0.0, ConfigViolation::NonPositiveMonitorRadius);
  require(c.reform_radius > 0.0, ConfigViolation::NonPositiveReformRadius);
  require(c.suspicion_threshold > 0, ConfigViolation::NonPositiveSuspicionThreshold);
  return out;
}

namespace {

std::string describe(const std::vector<ConfigViolation>& vs) {
  std::string msg = "invalid config:";
  for (auto v : vs) {
    msg += ' ';
    msg += to_string(v);
  }
  return msg;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigViolation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

ConfigError::ConfigError(const std::string& message) : std::runtime_error(message) {}

SimConfig validate(const SimConfig& cfg) {
  auto violations = check(cfg);
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

void set_config_value(SimConfig& c, std::string_view key, std::string_view value) {
  auto as_int = [&] { return parse_number<int>(key, value); };
  auto as_double = [&] { return parse_number<double>(key, value); };

  if (key == "total_drones") c.total_drones = as_int();
  else if (key == "num_malicious") c.num_malicious = as_int();
  else if (key == "num_eas") c.num_eas = as_int();
  else if (key == "map_size") c.map_size = as_double();
  else if (key == "center_x") c.center.x = as_double();
  else if (key == "center_y") c.center.y = as_double();
  else if (key == "center_radius") c.center_radius = as_double();
  else if (key == "enemy_spawn_period") c.enemy_spawn_period = as_int();
  else if (key == "first_spawn_step") c.first_spawn_step = as_int();
  else if (key == "detection_radius") c.detection_radius = as_double();
  else if (key == "time_limit_steps") c.time_limit_steps = as_int();
  else if (key == "fps") c.fps = as_double();
  else if (key == "drone_speed") c.drone_speed = as_double();
  else if (key == "enemy_speed") c.enemy_speed = as_double();
  else if (key == "intercept_radius") c.intercept_radius = as_double();
  else if (key == "patrol_radius") c.patrol_radius = as_double();
  else if (key == "ea_orbit_radius") c.ea_orbit_radius = as_double();
  else if (key == "ea_monitor_radius") c.ea_monitor_radius = as_double();
  else if (key == "suspicion_threshold") c.suspicion_threshold = as_int();
  else if (key == "reform_radius") c.reform_radius = as_double();
  else if (key == "failsafe_enabled") c.failsafe_enabled = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& c) {
  using detail::format_double;
  return {
      {"total_drones", std::to_string(c.total_drones)},
      {"num_malicious", std::to_string(c.num_malicious)},
      {"num_eas", std::to_string(c.num_eas)},
      {"map_size", format_double(c.map_size)},
      {"center_x", format_double(c.center.x)},
      {"center_y", format_double(c.center.y)},
      {"center_radius", format_double(c.center_radius)},
      {"enemy_spawn_period", std::to_string(c.enemy_spawn_period)},
      {"first_spawn_step", std::to_string(c.first_spawn_step)},
      {"detection_radius", format_double(c.detection_radius)},
      {"time_limit_steps", std::to_string(c.time_limit_steps)},
      {"fps", format_double(c.fps)},
      {"drone_speed", format_double(c.drone_speed)},
      {"enemy_speed", format_double(c.enemy_speed)},
      {"intercept_radius", format_double(c.intercept_radius)},
      {"patrol_radius", format_double(c.patrol_radius)},
      {"ea_orbit_radius", format_double(c.ea_orbit_radius)},
      {"ea_monitor_radius", format_double(c.ea_monitor_radius)},
      {"suspicion_threshold", std::to_string(c.suspicion_threshold)},
      {"reform_radius", format_double(c.reform_radius)},
      {"failsafe_enabled", c.failsafe_enabled ? "true" : "false"},
  };
}

SimConfig parse_config(std::istream& in, SimConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = detail::trim(view.substr(0, eq));
    const auto value = detail::trim(view.substr(eq + 1));
    try {
      set_config_value(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

SimConfig load_config_file(const std::filesystem::path& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, std::move(base));
}

}  // namespace sentinel
