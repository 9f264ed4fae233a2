#include "sentinel/experiment.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "format_util.h"
#include "sentinel/dynamics.h"
#include "sentinel/random.h"

namespace sentinel {

std::string_view to_string(RunResult r) { return r == RunResult::Success ? "success" : "fail"; }

RecordChecks RecordChecks::strict(const SimConfig& cfg) {
  return RecordChecks{cfg.total_drones, cfg.time_limit_steps, cfg.fps};
}

RecordChecks RecordChecks::wall_clock(const SimConfig& cfg) {
  return RecordChecks{cfg.total_drones, cfg.time_limit_steps, std::nullopt};
}

RecordChecks RecordChecks::minimal() { return RecordChecks{}; }

double simulated_seconds(int steps, double fps) { return std::round(steps / fps * 100.0) / 100.0; }

std::optional<std::string> record_violation(const RunRecord& r, const RecordChecks& checks) {
  if (r.run < 1) return "run index must be >= 1";
  if (r.ea < 0) return "negative EA count";
  if (r.steps < 0) return "negative step count";
  if (r.time_s < 0.0) return "negative time";
  if (r.healthy < 0 || r.malicious < 0 || r.reformed < 0) return "negative drone count";
  if (r.reformed > r.malicious) return "reformed exceeds malicious";
  if (checks.total_drones && r.healthy + r.malicious != *checks.total_drones) {
    return "healthy + malicious != " + std::to_string(*checks.total_drones);
  }
  if (checks.time_limit_steps) {
    const bool at_limit = r.steps == *checks.time_limit_steps;
    if ((r.result == RunResult::Success) != at_limit) return "result must be success iff steps equals the time limit";
  }
  if (checks.fps && std::abs(r.time_s - simulated_seconds(r.steps, *checks.fps)) > 1e-9) {
    return "time_s != round(steps / fps, 2)";
  }
  return std::nullopt;
}

RecordParseError::RecordParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

void write_records(std::span<const RunRecord> records, std::ostream& out, const RecordChecks& checks) {
  if (records.empty()) throw std::invalid_argument("no records to write");
  for (const auto& r : records) {
    if (auto why = record_violation(r, checks)) {
      throw std::invalid_argument("run " + std::to_string(r.run) + ": " + *why);
    }
  }
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.run << ',' << r.ea << ',' << to_string(r.result) << ',' << r.steps << ','
        << detail::format_fixed(r.time_s, 2) << ',' << r.healthy << ',' << r.malicious << ',' << r.reformed << '\n';
  }
}

std::string format_records(std::span<const RunRecord> records, const RecordChecks& checks) {
  std::ostringstream os;
  write_records(records, os, checks);
  return os.str();
}

void write_records(std::span<const RunRecord> records, const std::filesystem::path& path, const RecordChecks& checks) {
  const std::string text = format_records(records, checks);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

template <typename T>
T parse_field(std::string_view text, int line, std::string_view name) {
  T v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || p != text.data() + text.size()) {
    throw RecordParseError(line, "bad " + std::string(name) + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<RunRecord> read_records(std::istream& in, const RecordChecks& checks) {
  std::string line;
  if (!std::getline(in, line)) throw RecordSchemaError("empty record file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) {
    throw RecordSchemaError("unexpected header '" + line + "', expected '" + std::string(kRecordHeader) + "'");
  }

  std::vector<RunRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw RecordParseError(line_no, "expected 8 fields, got " + std::to_string(f.size()));
    RunRecord r;
    r.run = parse_field<int>(f[0], line_no, "run");
    r.ea = parse_field<int>(f[1], line_no, "ea");
    if (f[2] == "success") r.result = RunResult::Success;
    else if (f[2] == "fail") r.result = RunResult::Fail;
    else throw RecordParseError(line_no, "bad result '" + std::string(f[2]) + "'");
    r.steps = parse_field<int>(f[3], line_no, "steps");
    r.time_s = parse_field<double>(f[4], line_no, "time_s");
    r.healthy = parse_field<int>(f[5], line_no, "healthy");
    r.malicious = parse_field<int>(f[6], line_no, "malicious");
    r.reformed = parse_field<int>(f[7], line_no, "reformed");
    if (auto why = record_violation(r, checks)) throw RecordParseError(line_no, *why);
    out.push_back(r);
  }
  return out;
}

std::vector<RunRecord> read_records(const std::filesystem::path& path, const RecordChecks& checks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_records(in, checks);
  } catch (const RecordParseError& e) {
    throw RecordParseError(e.line(), path.string() + ": " + e.what());
  } catch (const RecordSchemaError& e) {
    throw RecordSchemaError(path.string() + ": " + e.what());
  }
}

Episode run_episode(const SimConfig& cfg_in, int run_index, std::uint64_t seed) {
  const SimConfig cfg = validate(cfg_in);
  Rng rng(seed);
  WorldState world = initial_world(cfg, rng);
  while (!world.outcome) world = step(std::move(world), cfg, rng).world;

  RunRecord r;
  r.run = run_index;
  r.ea = cfg.num_eas;
  r.result = *world.outcome == Outcome::Success ? RunResult::Success : RunResult::Fail;
  r.steps = world.step;
  r.time_s = simulated_seconds(world.step, cfg.fps);
  r.healthy = cfg.total_drones - cfg.num_malicious;
  r.malicious = cfg.num_malicious;
  r.reformed = world.count_role(DroneRole::Reformed);
  return Episode{r, std::move(world)};
}

std::vector<Episode> run_batch_episodes(const SimConfig& cfg_in, int num_runs, std::uint64_t base_seed,
                                        unsigned threads) {
  if (num_runs < 1) throw std::invalid_argument("num_runs must be >= 1");
  const SimConfig cfg = validate(cfg_in);
  std::vector<std::optional<Episode>> slots(static_cast<std::size_t>(num_runs));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(num_runs));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (int i = next++; i < num_runs && !failed; i = next++) {
      try {
        const int run = i + 1;
        slots[i] = run_episode(cfg, run, episode_seed(base_seed, static_cast<std::uint64_t>(run)));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Episode> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<RunRecord> run_batch(const SimConfig& cfg, int num_runs, std::uint64_t base_seed, unsigned threads) {
  std::vector<RunRecord> out;
  for (auto& ep : run_batch_episodes(cfg, num_runs, base_seed, threads)) out.push_back(ep.record);
  return out;
}

}  // namespace sentinel
