#include "sentinel/cli.h"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "format_util.h"
#include "sentinel/config.h"
#include "sentinel/experiment.h"
#include "sentinel/render.h"
#include "sentinel/stats.h"
#include "sentinel/world.h"

namespace sentinel::cli {

namespace {

struct Parser {
  CLI::App app{"Supervised patrol simulation and experiment harness", "sentinel"};
  CLI::App* simulate{nullptr};
  CLI::App* aggregate{nullptr};
  CLI::App* render{nullptr};

  SimulateArgs sim;
  AggregateArgs agg;
  RenderArgs ren;
  std::string config, out, frames, inputs_unused, world, image;

  Parser() {
    app.require_subcommand(1, 1);
    app.allow_extras(false);

    simulate = app.add_subcommand("simulate", "Run a seeded batch of episodes and write per-run records");
    simulate->add_option("--eas", sim.eas, "Number of enforcement agents")->required()->check(CLI::NonNegativeNumber);
    simulate->add_option("--runs", sim.runs, "Number of episodes")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Base seed")->required();
    simulate->add_option("--config", config, "key = value config file");
    simulate->add_option("--out", out, "Record file (default: standard output)");
    simulate->add_option("--frames", frames, "Directory for final-frame images and world snapshots");
    simulate->add_flag("--failsafe", sim.failsafe, "Enable the failsafe shutdown");

    aggregate = app.add_subcommand("aggregate", "Summarize record files");
    aggregate->add_option("--in", agg.inputs, "Record file (repeatable)")->required()->take_all();
    aggregate->add_flag("--verify", agg.verify, "Compare against the published summary values");

    render = app.add_subcommand("render", "Render a world snapshot to a PPM image");
    render->add_option("--world", world, "World snapshot file")->required();
    render->add_option("--out", image, "Output image")->required();
  }
};

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  Parser p;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    p.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::string help = p.app.help();
    if (p.simulate->parsed()) help = p.simulate->help();
    else if (p.aggregate->parsed()) help = p.aggregate->help();
    else if (p.render->parsed()) help = p.render->help();
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) throw HelpRequested(help);
    throw UsageError(e.what(), std::move(help));
  }

  if (p.simulate->parsed()) {
    if (!p.config.empty()) p.sim.config = p.config;
    if (!p.out.empty()) p.sim.out = p.out;
    if (!p.frames.empty()) p.sim.frames = p.frames;
    return p.sim;
  }
  if (p.aggregate->parsed()) return p.agg;
  p.ren.world = p.world;
  p.ren.out = p.image;
  return p.ren;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("SENTINEL_THREADS");
  if (!raw) return 0;
  unsigned v = 0;
  const std::string_view s = raw;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return 0;
  return v;
}

namespace {

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  SimConfig cfg = a.config ? load_config_file(*a.config) : default_config();
  cfg.num_eas = a.eas;
  if (a.failsafe) cfg.failsafe_enabled = true;
  cfg = validate(cfg);

  const auto episodes = run_batch_episodes(cfg, a.runs, a.seed, threads_from_env());
  std::vector<RunRecord> records;
  records.reserve(episodes.size());
  for (const auto& ep : episodes) records.push_back(ep.record);

  const auto checks = RecordChecks::strict(cfg);
  if (a.out) {
    write_records(records, *a.out, checks);
  } else {
    write_records(records, out, checks);
  }

  if (a.frames) {
    std::filesystem::create_directories(*a.frames);
    for (const auto& ep : episodes) {
      const std::string stem = "run_" + std::to_string(ep.record.run);
      write_image(render_frame(ep.final_world, cfg), *a.frames / (stem + ".ppm"));
      std::ofstream snap(*a.frames / (stem + ".world"), std::ios::binary);
      if (!snap) throw std::runtime_error("cannot write snapshot in " + a.frames->string());
      write_snapshot(ep.final_world, cfg, snap);
    }
  }
  return kExitOk;
}

int run_aggregate(const AggregateArgs& a, std::ostream& out) {
  std::vector<NamedStats> rows;
  for (const auto& path : a.inputs) {
    // Published tables carry wall-clock times, so time_s is not cross-checked.
    const auto records = read_records(path, RecordChecks::minimal());
    rows.push_back({path.string(), aggregate(records)});
  }
  write_summary_csv(rows, out);
  out << '\n';
  write_summary_table(rows, out);

  if (a.verify) {
    out << '\n';
    for (const auto& row : rows) {
      const auto published = published_summary(row.stats.ea);
      if (!published) {
        out << "verify " << row.label << ": no published summary for " << row.stats.ea << " EA\n";
        continue;
      }
      const auto diffs = divergences(row.stats, *published);
      if (diffs.empty()) {
        out << "verify " << row.label << ": matches published summary\n";
        continue;
      }
      out << "verify " << row.label << ": DIVERGES from published summary (" << diffs.size() << " metric"
          << (diffs.size() == 1 ? "" : "s") << ")\n";
      for (const auto& d : diffs) {
        out << "  " << d.metric << " recomputed=" << detail::format_fixed(d.recomputed, 4)
            << " published=" << detail::format_fixed(d.published, 4) << " tolerance="
            << detail::format_fixed(d.tolerance, 3) << '\n';
      }
    }
  }
  return kExitOk;
}

int run_render(const RenderArgs& a) {
  std::ifstream in(a.world, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + a.world.string());
  const auto snap = read_snapshot(in);
  write_image(render_frame(snap.world, snap.config), a.out);
  return kExitOk;
}

}  // namespace

int run(const Command& command, std::ostream& out, std::ostream& err) {
  try {
    return std::visit(
        [&](const auto& args) -> int {
          using T = std::decay_t<decltype(args)>;
          if constexpr (std::is_same_v<T, SimulateArgs>) return run_simulate(args, out);
          else if constexpr (std::is_same_v<T, AggregateArgs>) return run_aggregate(args, out);
          else return run_render(args);
        },
        command);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Command command;
  try {
    command = parse_args(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << e.help();
    return kExitUsage;
  }
  return run(command, std::cout, std::cerr);
}

}  // namespace sentinel::cli
