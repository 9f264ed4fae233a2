#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/config.h"
#include "sentinel/world.h"

namespace sentinel {

enum class RunResult { Success, Fail };

std::string_view to_string(RunResult r);

/// One row of a per-run results table.
///
/// `healthy` and `malicious` are the counts at episode start; `reformed` is
/// the number of reformations during the episode. `time_s` is simulated
/// time, steps / fps rounded to two decimals.
struct RunRecord {
  int run{1};
  int ea{0};
  RunResult result{RunResult::Fail};
  int steps{0};
  double time_s{0.0};
  int healthy{0};
  int malicious{0};
  int reformed{0};

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr std::string_view kRecordHeader = "run,ea,result,steps,time_s,healthy,malicious,reformed";

/// Which record invariants to enforce. Unset fields skip their check.
struct RecordChecks {
  std::optional<int> total_drones;
  std::optional<int> time_limit_steps;
  std::optional<double> fps;  // time_s == round(steps / fps, 2)

  /// Everything, against `cfg`.
  static RecordChecks strict(const SimConfig& cfg);
  /// Everything except time_s, whose published values are wall-clock.
  static RecordChecks wall_clock(const SimConfig& cfg);
  /// Only the config-independent invariants.
  static RecordChecks minimal();
};

/// Empty when the record satisfies `checks`, else a description.
std::optional<std::string> record_violation(const RunRecord& r, const RecordChecks& checks);

double simulated_seconds(int steps, double fps);

class RecordParseError : public std::runtime_error {
 public:
  RecordParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class RecordSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_records(std::span<const RunRecord> records, std::ostream& out, const RecordChecks& checks);
void write_records(std::span<const RunRecord> records, const std::filesystem::path& path, const RecordChecks& checks);
std::string format_records(std::span<const RunRecord> records, const RecordChecks& checks);

std::vector<RunRecord> read_records(std::istream& in, const RecordChecks& checks);
std::vector<RunRecord> read_records(const std::filesystem::path& path, const RecordChecks& checks);

struct Episode {
  RunRecord record;
  WorldState final_world;
};

Episode run_episode(const SimConfig& cfg, int run_index, std::uint64_t seed);

/// Episodes 1..num_runs with seeds episode_seed(base_seed, run). Output is
/// ordered by run and independent of `threads` (0 = hardware concurrency).
std::vector<Episode> run_batch_episodes(const SimConfig& cfg, int num_runs, std::uint64_t base_seed,
                                        unsigned threads = 0);
std::vector<RunRecord> run_batch(const SimConfig& cfg, int num_runs, std::uint64_t base_seed, unsigned threads = 0);

}  // namespace sentinel
