#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>

#include "sentinel/stats.h"

using namespace sentinel;

namespace {

const std::filesystem::path kFixtures = SENTINEL_FIXTURE_DIR;

std::vector<RunRecord> fixture(const char* name) {
  return read_records(kFixtures / name, RecordChecks::wall_clock(default_config()));
}

}  // namespace

TEST_CASE("mean and sample standard deviation") {
  const std::vector<double> constant(17, 1200.0);
  CHECK(mean(constant) == 1200.0);
  CHECK(sample_std(constant) == 0.0);
  CHECK(sample_std(std::vector<double>{42.0}) == 0.0);
  CHECK(sample_std(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK_THROWS_AS(mean(std::vector<double>{}), EmptyInput);
  CHECK_THROWS_AS(sample_std(std::vector<double>{}), EmptyInput);

  // 19 ones and 11 zeros, as in the 2-EA reformed column.
  std::vector<double> bern(30, 0.0);
  std::fill(bern.begin(), bern.begin() + 19, 1.0);
  CHECK(sample_std(bern) == doctest::Approx(0.49).epsilon(0.01));
}

TEST_CASE("Bernoulli columns satisfy var = p(1-p) n/(n-1)") {
  for (const char* name : {"no_ea.csv", "one_ea.csv", "two_ea.csv"}) {
    const auto records = fixture(name);
    std::vector<double> col;
    for (const auto& r : records) col.push_back(r.reformed);
    const double p = mean(col);
    const double n = static_cast<double>(col.size());
    const double s = sample_std(col);
    CHECK(s * s == doctest::Approx(p * (1 - p) * n / (n - 1)));
  }
}

TEST_CASE("aggregate reproduces the 2-EA summary") {
  const auto s = aggregate(fixture("two_ea.csv"));
  CHECK(s.n_runs == 30);
  CHECK(s.ea == 2);
  CHECK(std::abs(s.success_rate_pct - 26.7) <= 0.05);
  CHECK(std::abs(s.avg_duration_s - 53.5) <= 0.1);
  CHECK(std::abs(s.duration_std_s - 42.7) <= 0.1);
  CHECK(std::abs(s.avg_steps - 559.1) <= 0.1);
  CHECK(std::abs(s.avg_reformed - 0.63) <= 0.005);
  CHECK(std::abs(s.reformed_std - 0.49) <= 0.005);
  CHECK(s.avg_malicious == 1.0);
  CHECK(s.malicious_std == 0.0);
  CHECK(divergences(s, *published_summary(2)).empty());
}

TEST_CASE("aggregate over the no-EA table") {
  const auto s = aggregate(fixture("no_ea.csv"));
  CHECK(s.success_rate_pct == 0.0);
  CHECK(s.avg_reformed == 0.0);
  CHECK(s.reformed_std == 0.0);
  CHECK(s.avg_malicious == 1.0);
  CHECK(s.malicious_std == 0.0);
  CHECK(std::abs(s.avg_duration_s - 14.0) <= 0.1);
  // Recomputed directly from the 30 rows.
  CHECK(s.avg_steps == doctest::Approx(169.0));
  CHECK(s.duration_std_s == doctest::Approx(8.0162).epsilon(1e-4));
}

TEST_CASE("aggregate over the 1-EA table disagrees with the published column") {
  const auto s = aggregate(fixture("one_ea.csv"));
  // Independent recomputation: one success, four reformations, 6141 steps.
  CHECK(s.success_rate_pct == doctest::Approx(100.0 / 30.0));
  CHECK(s.avg_reformed == doctest::Approx(4.0 / 30.0));
  CHECK(s.avg_steps == doctest::Approx(6141.0 / 30.0));
  CHECK(std::abs(s.avg_steps - 204.7) <= 0.1);
  const auto diffs = divergences(s, *published_summary(1));
  auto flagged = [&](const char* key) {
    return std::any_of(diffs.begin(), diffs.end(), [&](const Divergence& d) { return d.metric == key; });
  };
  CHECK(flagged("success_rate_pct"));
  CHECK(flagged("avg_reformed"));
  CHECK(flagged("avg_steps"));
}

TEST_CASE("aggregate is permutation invariant") {
  auto records = fixture("two_ea.csv");
  const auto base = aggregate(records);
  std::mt19937 shuffle_rng(5);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(records.begin(), records.end(), shuffle_rng);
    const auto s = aggregate(records);
    CHECK(s.success_rate_pct == doctest::Approx(base.success_rate_pct));
    CHECK(s.avg_duration_s == doctest::Approx(base.avg_duration_s));
    CHECK(s.duration_std_s == doctest::Approx(base.duration_std_s));
    CHECK(s.avg_steps == doctest::Approx(base.avg_steps));
    CHECK(s.reformed_std == doctest::Approx(base.reformed_std));
  }
}

TEST_CASE("aggregate errors") {
  CHECK_THROWS_AS(aggregate(std::vector<RunRecord>{}), EmptyInput);
  auto records = fixture("two_ea.csv");
  records[3].ea = 1;
  CHECK_THROWS_AS(aggregate(records), MixedConfigurations);
}

TEST_CASE("summary table is rounded for display") {
  const std::vector<NamedStats> rows{{"no_ea.csv", aggregate(fixture("no_ea.csv"))},
                                     {"two_ea.csv", aggregate(fixture("two_ea.csv"))}};
  std::ostringstream table;
  write_summary_table(rows, table);
  const auto t = table.str();
  CHECK(t.find("No EA") != std::string::npos);
  CHECK(t.find("2 EA") != std::string::npos);
  CHECK(t.find("26.7") != std::string::npos);
  CHECK(t.find("559.1") != std::string::npos);
  CHECK(t.find("0.63") != std::string::npos);

  std::ostringstream csv;
  write_summary_csv(rows, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) ++n;
  CHECK(n == 3);
}
