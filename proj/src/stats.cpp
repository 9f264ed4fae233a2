#include "sentinel/stats.h"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "format_util.h"

namespace sentinel {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw EmptyInput();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.empty()) throw EmptyInput();
  if (xs.size() == 1) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

AggregateStats aggregate(std::span<const RunRecord> records) {
  if (records.empty()) throw EmptyInput();
  const int ea = records.front().ea;
  std::vector<double> times, steps, reformed, malicious;
  int successes = 0;
  for (const auto& r : records) {
    if (r.ea != ea) throw MixedConfigurations();
    times.push_back(r.time_s);
    steps.push_back(r.steps);
    reformed.push_back(r.reformed);
    malicious.push_back(r.malicious);
    if (r.result == RunResult::Success) ++successes;
  }
  AggregateStats s;
  s.ea = ea;
  s.n_runs = static_cast<int>(records.size());
  s.success_rate_pct = 100.0 * successes / s.n_runs;
  s.avg_duration_s = mean(times);
  s.duration_std_s = sample_std(times);
  s.avg_steps = mean(steps);
  s.avg_reformed = mean(reformed);
  s.reformed_std = sample_std(reformed);
  s.avg_malicious = mean(malicious);
  s.malicious_std = sample_std(malicious);
  return s;
}

std::optional<AggregateStats> published_summary(int ea) {
  // Columns of the published summary table (30 runs each).
  switch (ea) {
    case 0: return AggregateStats{0, 30, 0.0, 14.0, 7.9, 168.3, 0.00, 0.00, 1.00, 0.00};
    case 1: return AggregateStats{1, 30, 7.4, 23.9, 28.1, 263.5, 0.20, 0.41, 1.00, 0.00};
    case 2: return AggregateStats{2, 30, 26.7, 53.5, 42.7, 559.1, 0.63, 0.49, 1.00, 0.00};
    default: return std::nullopt;
  }
}

namespace {

struct MetricSpec {
  const char* label;
  const char* key;
  double AggregateStats::*field;
  int decimals;
  double tolerance;  // used by divergences()
};

constexpr MetricSpec kMetrics[] = {
    {"Success Rate (%)", "success_rate_pct", &AggregateStats::success_rate_pct, 1, 0.05},
    {"Avg Duration (s)", "avg_duration_s", &AggregateStats::avg_duration_s, 1, 0.1},
    {"Duration Std Dev (s)", "duration_std_s", &AggregateStats::duration_std_s, 1, 0.1},
    {"Avg Steps", "avg_steps", &AggregateStats::avg_steps, 1, 0.1},
    {"Avg Reformed Drones", "avg_reformed", &AggregateStats::avg_reformed, 2, 0.005},
    {"Reformed Drones Std Dev", "reformed_std", &AggregateStats::reformed_std, 2, 0.005},
    {"Avg Malicious Drones", "avg_malicious", &AggregateStats::avg_malicious, 2, 0.005},
    {"Malicious Drones Std Dev", "malicious_std", &AggregateStats::malicious_std, 2, 0.005},
};

}  // namespace

std::vector<Divergence> divergences(const AggregateStats& stats, const AggregateStats& published) {
  std::vector<Divergence> out;
  for (const auto& m : kMetrics) {
    const double a = stats.*(m.field);
    const double b = published.*(m.field);
    // Slack for the decimal representation of the tolerance itself.
    if (std::abs(a - b) > m.tolerance + 1e-9) out.push_back({m.key, a, b, m.tolerance});
  }
  return out;
}

void write_summary_csv(std::span<const NamedStats> rows, std::ostream& out) {
  out << "input,ea,n_runs";
  for (const auto& m : kMetrics) out << ',' << m.key;
  out << '\n';
  for (const auto& row : rows) {
    out << row.label << ',' << row.stats.ea << ',' << row.stats.n_runs;
    for (const auto& m : kMetrics) out << ',' << detail::format_fixed(row.stats.*(m.field), 4);
    out << '\n';
  }
}

void write_summary_table(std::span<const NamedStats> rows, std::ostream& out) {
  std::size_t label_w = 6;
  for (const auto& m : kMetrics) label_w = std::max(label_w, std::string_view(m.label).size());

  std::vector<std::string> headers;
  for (const auto& row : rows) {
    headers.push_back(row.stats.ea == 0 ? "No EA" : std::to_string(row.stats.ea) + " EA");
  }
  std::vector<std::size_t> widths;
  for (const auto& h : headers) widths.push_back(std::max<std::size_t>(h.size(), 8));

  out << std::left << std::setw(static_cast<int>(label_w)) << "Metric";
  for (std::size_t i = 0; i < headers.size(); ++i) {
    out << "  " << std::right << std::setw(static_cast<int>(widths[i])) << headers[i];
  }
  out << '\n';
  for (const auto& m : kMetrics) {
    out << std::left << std::setw(static_cast<int>(label_w)) << m.label;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << "  " << std::right << std::setw(static_cast<int>(widths[i]))
          << detail::format_fixed(rows[i].stats.*(m.field), m.decimals);
    }
    out << '\n';
  }
  out << std::left;
}

}  // namespace sentinel
