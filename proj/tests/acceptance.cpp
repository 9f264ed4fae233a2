// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: sentinel_acceptance [path/to/sentinel]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "invariant_checks.h"
#include "sentinel/cli.h"
#include "sentinel/experiment.h"
#include "sentinel/render.h"
#include "sentinel/stats.h"

using namespace sentinel;

namespace {

const std::filesystem::path kFixtures = SENTINEL_FIXTURE_DIR;

class Criterion {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol + 1e-12;
    record(ok, what + " = " + fmt(got) + " (want " + fmt(want) + " +/- " + fmt(tol) + ")");
  }
  void exact(const std::string& what, double got, double want) {
    record(got == want, what + " = " + fmt(got) + " (want exactly " + fmt(want) + ")");
  }
  void that(bool ok, const std::string& what) { record(ok, what); }

  bool passed() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  void note(std::string s) { notes_.push_back(std::move(s)); }

 private:
  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
  }
  void record(bool ok, std::string msg) {
    if (!ok) failures_.push_back(std::move(msg));
  }

  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::vector<RunRecord> fixture(const char* name) {
  return read_records(kFixtures / name, RecordChecks::wall_clock(default_config()));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// ---------------------------------------------------------------------------

void two_ea_summary(Criterion& c) {
  const auto s = aggregate(fixture("two_ea.csv"));
  c.near("success_rate_pct", s.success_rate_pct, 26.7, 0.05);
  c.near("avg_duration_s", s.avg_duration_s, 53.5, 0.1);
  c.near("duration_std_s", s.duration_std_s, 42.7, 0.1);
  c.near("avg_steps", s.avg_steps, 559.1, 0.1);
  c.near("avg_reformed", s.avg_reformed, 0.63, 0.005);
  c.near("reformed_std", s.reformed_std, 0.49, 0.005);
  c.exact("avg_malicious", s.avg_malicious, 1.0);
  c.exact("malicious_std", s.malicious_std, 0.0);
}

void no_ea_summary(Criterion& c) {
  const auto records = fixture("no_ea.csv");
  const auto s = aggregate(records);
  c.exact("success_rate_pct", s.success_rate_pct, 0.0);
  c.near("avg_duration_s", s.avg_duration_s, 14.0, 0.1);
  c.near("duration_std_s", s.duration_std_s, 7.9, 0.1);
  c.near("avg_steps", s.avg_steps, 168.3, 1.0);
  c.that(std::all_of(records.begin(), records.end(), [](const RunRecord& r) { return r.reformed == 0; }),
         "every reformed value is zero");
  c.exact("avg_reformed", s.avg_reformed, 0.0);
  c.exact("reformed_std", s.reformed_std, 0.0);
}

void one_ea_inconsistency(Criterion& c) {
  const auto s = aggregate(fixture("one_ea.csv"));
  c.near("success_rate_pct", s.success_rate_pct, 100.0 / 30.0, 1e-9);
  c.near("avg_reformed", s.avg_reformed, 4.0 / 30.0, 1e-9);
  c.near("avg_steps", s.avg_steps, 204.7, 0.1);

  std::ostringstream out, err;
  const auto cmd = cli::parse_args({"aggregate", "--in", (kFixtures / "one_ea.csv").string(), "--verify"});
  const int code = cli::run(cmd, out, err);
  const auto text = out.str();
  c.that(code == cli::kExitOk, "aggregate --verify exits 0");
  c.that(text.find("DIVERGES") != std::string::npos, "--verify flags the 1-EA divergence");
  for (const char* metric : {"success_rate_pct", "avg_reformed", "avg_steps"}) {
    c.that(text.find(std::string("  ") + metric + " ") != std::string::npos,
           std::string("--verify lists ") + metric);
  }
}

struct BatchSummary {
  AggregateStats stats;
  int reformations{0};
};

void trend(Criterion& c) {
  std::vector<AggregateStats> by_ea;
  for (int ea = 0; ea <= 2; ++ea) {
    auto cfg = default_config();
    cfg.num_eas = ea;
    std::vector<RunRecord> records;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      records.push_back(run_episode(cfg, static_cast<int>(seed), seed).record);
    }
    by_ea.push_back(aggregate(records));
    const auto& s = by_ea.back();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d EA: success %.1f%%, mean steps %.1f, mean reformed %.3f", ea,
                  s.success_rate_pct, s.avg_steps, s.avg_reformed);
    c.note(buf);
  }
  const auto &s0 = by_ea[0], &s1 = by_ea[1], &s2 = by_ea[2];
  c.exact("success(0 EA)", s0.success_rate_pct, 0.0);
  c.that(s2.success_rate_pct > s1.success_rate_pct, "success(2 EA) > success(1 EA)");
  c.that(s1.success_rate_pct >= s0.success_rate_pct, "success(1 EA) >= success(0 EA)");
  c.that(s0.avg_steps < s1.avg_steps && s1.avg_steps < s2.avg_steps, "mean steps strictly increasing in EA count");
  c.exact("mean reformed (0 EA)", s0.avg_reformed, 0.0);
  c.that(s1.avg_reformed > 0.0, "mean reformed (1 EA) > 0");
  c.that(s2.avg_reformed > s1.avg_reformed, "mean reformed (2 EA) > (1 EA)");
  c.that(s2.success_rate_pct >= 10.0 && s2.success_rate_pct <= 50.0, "success(2 EA) in [10, 50]");
  c.that(s1.success_rate_pct >= 0.0 && s1.success_rate_pct <= 20.0, "success(1 EA) in [0, 20]");
  c.that(s0.avg_steps >= 100.0 && s0.avg_steps <= 300.0, "mean steps (0 EA) in [100, 300]");
}

bool run_simulate(const std::string& binary, const std::filesystem::path& dir) {
  const auto out = dir / "records.csv";
  const auto frames = dir / "frames";
  if (!binary.empty()) {
    const std::string cmd = "\"" + binary + "\" simulate --eas 2 --runs 30 --seed 7 --out \"" + out.string() +
                            "\" --frames \"" + frames.string() + "\"";
    return std::system(cmd.c_str()) == 0;
  }
  std::ostringstream o, e;
  const auto command = cli::parse_args(
      {"simulate", "--eas", "2", "--runs", "30", "--seed", "7", "--out", out.string(), "--frames", frames.string()});
  return cli::run(command, o, e) == cli::kExitOk;
}

void determinism(Criterion& c, const std::string& binary) {
  const auto root = std::filesystem::temp_directory_path() / "sentinel_acceptance_determinism";
  std::filesystem::remove_all(root);
  const auto a = root / "a";
  const auto b = root / "b";
  std::filesystem::create_directories(a);
  std::filesystem::create_directories(b);
  c.note(binary.empty() ? "in-process CLI" : "CLI binary " + binary);

  c.that(run_simulate(binary, a), "first simulate run succeeded");
  c.that(run_simulate(binary, b), "second simulate run succeeded");
  const auto ra = slurp(a / "records.csv");
  c.that(!ra.empty(), "record file written");
  c.that(ra == slurp(b / "records.csv"), "record files byte-identical");

  int frames = 0;
  bool identical = true;
  for (int run = 1; run <= 30; ++run) {
    const auto name = "run_" + std::to_string(run) + ".ppm";
    const auto fa = slurp(a / "frames" / name);
    const auto fb = slurp(b / "frames" / name);
    if (!fa.empty()) ++frames;
    identical = identical && !fa.empty() && fa == fb;
  }
  c.exact("frame files written", frames, 30);
  c.that(identical, "frame files byte-identical");
}

void invariants(Criterion& c) {
  Rng meta(0x5EED);
  int episodes = 0;
  int reformations = 0;
  int max_compliant = 0;
  auto audit = [&](const SimConfig& cfg, std::uint64_t seed, const std::string& label) {
    testing::EpisodeAuditor auditor(cfg);
    const auto final_world = testing::audited_episode(cfg, seed, auditor);
    ++episodes;
    reformations += auditor.reformations();
    max_compliant = std::max(max_compliant, auditor.max_compliant_suspicion());
    for (const auto& f : auditor.failures()) c.that(false, label + ": " + f);
    c.that(final_world.count_role(DroneRole::Reformed) <= cfg.num_malicious, label + ": reformed <= num_malicious");
    if (cfg.num_eas == 0) c.that(auditor.reformations() == 0, label + ": no reformation without EAs");
  };

  for (int i = 0; i < 10; ++i) {
    const auto cfg = testing::random_config(meta);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      audit(cfg, seed, "config " + std::to_string(i) + " seed " + std::to_string(seed));
    }
  }
  // The 90 default-config runs, for false-positive interventions.
  for (int ea = 0; ea <= 2; ++ea) {
    auto cfg = default_config();
    cfg.num_eas = ea;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      audit(cfg, seed, "default " + std::to_string(ea) + " EA seed " + std::to_string(seed));
    }
  }
  c.note(std::to_string(episodes) + " audited episodes, " + std::to_string(reformations) +
         " reformations, max compliant suspicion " + std::to_string(max_compliant));
}

void round_trips(Criterion& c) {
  Rng rng(1000);
  std::vector<RunRecord> records;
  for (int i = 1; i <= 1000; ++i) {
    RunRecord r;
    r.run = i;
    r.ea = static_cast<int>(rng.below(3));
    r.result = rng.below(5) == 0 ? RunResult::Success : RunResult::Fail;
    r.steps = r.result == RunResult::Success ? 1200 : 1 + static_cast<int>(rng.below(1199));
    r.time_s = simulated_seconds(r.steps, 10.0);
    r.malicious = static_cast<int>(rng.below(3));
    r.healthy = 6 - r.malicious;
    r.reformed = static_cast<int>(rng.below(static_cast<std::uint64_t>(r.malicious) + 1));
    records.push_back(r);
  }
  const auto checks = RecordChecks::strict(default_config());
  std::istringstream in(format_records(records, checks));
  c.that(read_records(in, checks) == records, "read(write(records)) == records for 1000 records");

  for (const char* name : {"no_ea.csv", "one_ea.csv", "two_ea.csv"}) {
    try {
      const auto rows = fixture(name);
      c.exact(std::string(name) + " rows", static_cast<double>(rows.size()), 30.0);
    } catch (const std::exception& e) {
      c.that(false, std::string(name) + ": " + e.what());
    }
  }

  Frame f(2, 1);
  f.set(1, 0, Rgb{0, 0, 0});
  const std::string expected = std::string("P6\n2 1\n255\n") + "\xFF\xFF\xFF" + std::string(3, '\0');
  c.that(encode_ppm(f) == expected, "2x1 PPM bytes exact");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";

  struct Entry {
    const char* name;
    double limit_s;
    std::function<void(Criterion&)> body;
  };
  const std::vector<Entry> criteria = {
      {"AC1 aggregator vs published summary (2 EA)", 1.0, two_ea_summary},
      {"AC2 aggregator vs published summary (No EA)", 1.0, no_ea_summary},
      {"AC3 1-EA per-run table vs summary divergence", 1.0, one_ea_inconsistency},
      {"AC4 trend reproduction over seeds 1-30", 60.0, trend},
      {"AC5 determinism of simulate --eas 2 --runs 30 --seed 7", 60.0, [&](Criterion& c) { determinism(c, binary); }},
      {"AC6 invariant suite", 120.0, invariants},
      {"AC7 format round-trips", 5.0, round_trips},
  };

  int failed = 0;
  for (const auto& entry : criteria) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      entry.body(c);
    } catch (const std::exception& e) {
      c.that(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char limit[96];
    std::snprintf(limit, sizeof limit, "runtime %.3f s (limit %.0f s)", secs, entry.limit_s);
    c.that(secs < entry.limit_s, limit);

    std::printf("[%s] %s (%.3f s)\n", c.passed() ? "PASS" : "FAIL", entry.name, secs);
    for (const auto& n : c.notes()) std::printf("       %s\n", n.c_str());
    for (const auto& f : c.failures()) std::printf("       failed: %s\n", f.c_str());
    if (!c.passed()) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
