#include "sentinel/world.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "format_util.h"

namespace sentinel {

std::string_view to_string(DroneRole role) {
  switch (role) {
    case DroneRole::Compliant: return "compliant";
    case DroneRole::Malicious: return "malicious";
    case DroneRole::Reformed: return "reformed";
  }
  return "unknown";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Spawn: return "spawn";
    case EventKind::EntryPoint: return "entry_point";
    case EventKind::Interception: return "interception";
    case EventKind::SuspicionRaised: return "suspicion_raised";
    case EventKind::Reformation: return "reformation";
    case EventKind::Breach: return "breach";
    case EventKind::Failsafe: return "failsafe";
  }
  return "unknown";
}

std::string_view to_string(Outcome outcome) { return outcome == Outcome::Success ? "success" : "fail"; }

int EnforcementAgentState::suspicion_of(int drone_id) const {
  auto it = suspicion.find(drone_id);
  return it == suspicion.end() ? 0 : it->second;
}

int WorldState::count_role(DroneRole role) const {
  return static_cast<int>(std::count_if(drones.begin(), drones.end(), [role](const Drone& d) { return d.role == role; }));
}

const Drone* WorldState::find_drone(int id) const {
  auto it = std::find_if(drones.begin(), drones.end(), [id](const Drone& d) { return d.id == id; });
  return it == drones.end() ? nullptr : &*it;
}

Drone* WorldState::find_drone(int id) {
  return const_cast<Drone*>(std::as_const(*this).find_drone(id));
}

WorldState initial_world(const SimConfig& cfg_in, Rng& rng) {
  const SimConfig cfg = validate(cfg_in);
  WorldState w;

  const int n = cfg.total_drones;
  w.drones.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double angle = kTwoPi * i / n;
    Drone d;
    d.id = i;
    d.position = cfg.center + unit_at(angle) * cfg.patrol_radius;
    d.last_position = d.position;
    d.sector_index = i;
    w.drones.push_back(d);
  }

  // Partial Fisher-Yates: the first num_malicious slots are the draw.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < cfg.num_malicious; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
    w.drones[order[i]].role = DroneRole::Malicious;
  }

  const int m = cfg.num_eas;
  w.eas.reserve(m);
  for (int j = 0; j < m; ++j) {
    EnforcementAgentState ea;
    ea.id = j;
    ea.position = cfg.center + unit_at(kTwoPi * j / m) * cfg.ea_orbit_radius;
    for (const auto& d : w.drones) ea.suspicion[d.id] = 0;
    w.eas.push_back(std::move(ea));
  }
  return w;
}

WorldState initial_world(const SimConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return initial_world(cfg, rng);
}

bool breach_occurred(const WorldState& world, const SimConfig& cfg) {
  return std::any_of(world.enemies.begin(), world.enemies.end(),
                     [&](const Enemy& e) { return distance(e.position, cfg.center) <= cfg.center_radius; });
}

// ---------------------------------------------------------------------------
// Snapshot text

namespace {

constexpr std::string_view kSnapshotMagic = "sentinel-snapshot 1";

std::string num(double v) { return detail::format_double(v); }

DroneRole parse_role(const std::string& s) {
  if (s == "compliant") return DroneRole::Compliant;
  if (s == "malicious") return DroneRole::Malicious;
  if (s == "reformed") return DroneRole::Reformed;
  throw std::runtime_error("unknown drone role '" + s + "'");
}

EventKind parse_event_kind(const std::string& s) {
  for (auto k : {EventKind::Spawn, EventKind::EntryPoint, EventKind::Interception, EventKind::SuspicionRaised,
                 EventKind::Reformation, EventKind::Breach, EventKind::Failsafe}) {
    if (to_string(k) == s) return k;
  }
  throw std::runtime_error("unknown event kind '" + s + "'");
}

template <typename T>
T field(std::istringstream& in, int line_no) {
  std::string tok;
  if (!(in >> tok)) throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": missing field");
  T v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
  return v;
}

std::string word(std::istringstream& in, int line_no) {
  std::string tok;
  if (!(in >> tok)) throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": missing field");
  return tok;
}

}  // namespace

void write_snapshot(const WorldState& w, const SimConfig& cfg, std::ostream& out) {
  out << kSnapshotMagic << '\n';
  for (const auto& [k, v] : config_entries(cfg)) out << "config " << k << ' ' << v << '\n';
  out << "step " << w.step << '\n';
  out << "outcome " << (w.outcome ? to_string(*w.outcome) : "none") << '\n';
  out << "counters " << w.enemies_destroyed << ' ' << w.enemies_spawned << '\n';
  for (const auto& d : w.drones) {
    out << "drone " << d.id << ' ' << num(d.position.x) << ' ' << num(d.position.y) << ' ' << to_string(d.role) << ' '
        << num(d.last_position.x) << ' ' << num(d.last_position.y) << ' ' << d.sector_index << ' '
        << d.target_enemy.value_or(-1) << ' ' << d.patrol_dir << '\n';
  }
  for (const auto& e : w.enemies) {
    out << "enemy " << e.id << ' ' << num(e.position.x) << ' ' << num(e.position.y) << ' ' << e.spawned_at << '\n';
  }
  for (const auto& ea : w.eas) {
    out << "ea " << ea.id << ' ' << num(ea.position.x) << ' ' << num(ea.position.y) << ' ';
    if (const auto* p = ea.pursuit()) {
      out << "pursue " << p->drone_id << ' ' << p->since_step << '\n';
    } else {
      out << "patrol\n";
    }
    for (const auto& [drone, count] : ea.suspicion) {
      out << "suspicion " << ea.id << ' ' << drone << ' ' << count << '\n';
    }
  }
  for (const auto& ev : w.events) {
    out << "event " << ev.step << ' ' << to_string(ev.kind) << ' ' << ev.subject << ' ' << ev.actor << '\n';
  }
}

Snapshot read_snapshot(std::istream& in) {
  Snapshot snap;
  snap.config = default_config();
  WorldState& w = snap.world;

  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kSnapshotMagic) {
    throw std::runtime_error("not a world snapshot (missing header)");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::istringstream ls(line);
    const std::string kind = word(ls, line_no);
    if (kind == "config") {
      const auto key = word(ls, line_no);
      const auto value = word(ls, line_no);
      set_config_value(snap.config, key, value);
    } else if (kind == "step") {
      w.step = field<int>(ls, line_no);
    } else if (kind == "outcome") {
      const auto o = word(ls, line_no);
      if (o == "none") w.outcome.reset();
      else if (o == "success") w.outcome = Outcome::Success;
      else if (o == "fail") w.outcome = Outcome::Fail;
      else throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": bad outcome");
    } else if (kind == "counters") {
      w.enemies_destroyed = field<int>(ls, line_no);
      w.enemies_spawned = field<int>(ls, line_no);
    } else if (kind == "drone") {
      Drone d;
      d.id = field<int>(ls, line_no);
      d.position.x = field<double>(ls, line_no);
      d.position.y = field<double>(ls, line_no);
      d.role = parse_role(word(ls, line_no));
      d.last_position.x = field<double>(ls, line_no);
      d.last_position.y = field<double>(ls, line_no);
      d.sector_index = field<int>(ls, line_no);
      if (const int t = field<int>(ls, line_no); t >= 0) d.target_enemy = t;
      d.patrol_dir = field<int>(ls, line_no);
      w.drones.push_back(d);
    } else if (kind == "enemy") {
      Enemy e;
      e.id = field<int>(ls, line_no);
      e.position.x = field<double>(ls, line_no);
      e.position.y = field<double>(ls, line_no);
      e.spawned_at = field<int>(ls, line_no);
      w.enemies.push_back(e);
    } else if (kind == "ea") {
      EnforcementAgentState ea;
      ea.id = field<int>(ls, line_no);
      ea.position.x = field<double>(ls, line_no);
      ea.position.y = field<double>(ls, line_no);
      if (word(ls, line_no) == "pursue") {
        PursueMode p;
        p.drone_id = field<int>(ls, line_no);
        p.since_step = field<int>(ls, line_no);
        ea.mode = p;
      }
      w.eas.push_back(std::move(ea));
    } else if (kind == "suspicion") {
      const int ea_id = field<int>(ls, line_no);
      const int drone = field<int>(ls, line_no);
      const int count = field<int>(ls, line_no);
      auto it = std::find_if(w.eas.begin(), w.eas.end(), [&](const auto& ea) { return ea.id == ea_id; });
      if (it == w.eas.end()) throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": unknown EA");
      it->suspicion[drone] = count;
    } else if (kind == "event") {
      Event ev;
      ev.step = field<int>(ls, line_no);
      ev.kind = parse_event_kind(word(ls, line_no));
      ev.subject = field<int>(ls, line_no);
      ev.actor = field<int>(ls, line_no);
      w.events.push_back(ev);
    } else {
      throw std::runtime_error("snapshot line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
    }
  }
  return snap;
}

}  // namespace sentinel
