#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sentinel/experiment.h"

namespace sentinel {

class EmptyInput : public std::invalid_argument {
 public:
  EmptyInput() : std::invalid_argument("statistic of an empty sample") {}
};

class MixedConfigurations : public std::invalid_argument {
 public:
  MixedConfigurations() : std::invalid_argument("records mix different EA counts") {}
};

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator); 0 for a single element.
double sample_std(std::span<const double> xs);

struct AggregateStats {
  int ea{0};
  int n_runs{0};
  double success_rate_pct{0.0};
  double avg_duration_s{0.0};
  double duration_std_s{0.0};
  double avg_steps{0.0};
  double avg_reformed{0.0};
  double reformed_std{0.0};
  double avg_malicious{0.0};
  double malicious_std{0.0};
};

AggregateStats aggregate(std::span<const RunRecord> records);

/// Published summary values for an EA count, if there are any.
std::optional<AggregateStats> published_summary(int ea);

struct Divergence {
  std::string metric;
  double recomputed{0.0};
  double published{0.0};
  double tolerance{0.0};
};

/// Metrics of `stats` farther than their tolerance from `published`.
std::vector<Divergence> divergences(const AggregateStats& stats, const AggregateStats& published);

struct NamedStats {
  std::string label;
  AggregateStats stats;
};

void write_summary_csv(std::span<const NamedStats> rows, std::ostream& out);

/// Metric-per-row table with one column per input, rounded for display.
void write_summary_table(std::span<const NamedStats> rows, std::ostream& out);

}  // namespace sentinel
