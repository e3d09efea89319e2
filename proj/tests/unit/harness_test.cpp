#include "swarmlife/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "swarmlife/branching.hpp"
#include "swarmlife/errors.hpp"

namespace swarmlife::harness {
namespace {

ScenarioConfig matching(std::uint64_t n, std::uint64_t k, double alpha) {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::RandomMatching;
  cfg.peers = n;
  cfg.chunks = k;
  cfg.alpha = alpha;
  return cfg;
}

bool within(const Estimate& e, double target, double sigmas = 3.0) {
  return std::abs(e.mean - target) <= sigmas * std::max(e.std_error, 1e-12);
}

TEST(StaircaseOracleTest, MatchesExactValues) {
  // k = 1: the union bound is exact
  const auto single = oracle_staircase_missing(5, 1, 40000, 1);
  EXPECT_NEAR(single.analytic_per_chunk, 120.0 / 3125.0, 1e-15);
  EXPECT_TRUE(within(single.any_missing, 120.0 / 3125.0));

  const auto two = oracle_staircase_missing(2, 1, 40000, 2);
  EXPECT_TRUE(within(two.any_missing, 0.5));

  // n = k = 4: exhaustive enumeration gives 36/96
  const auto four = oracle_staircase_missing(4, 4, 40000, 3);
  EXPECT_TRUE(within(four.any_missing, 0.375));
  EXPECT_TRUE(within(four.per_chunk_absence, 3.0 / 32.0));
}

TEST(StaircaseOracleTest, GuardRefusesHugeSnapshots) {
  EXPECT_THROW(oracle_staircase_missing(2000, 1000, 10, 0), ConfigError);
  EXPECT_THROW(oracle_staircase_missing(0, 3, 10, 0), ConfigError);
}

TEST(BernoulliOracleTest, FlagsClosedFormMismatch) {
  const auto b = oracle_bernoulli_missing(2, 1, 60000, 4);
  EXPECT_NEAR(b.sampled.analytic_per_chunk, 2.0 / 9.0, 1e-15);
  EXPECT_TRUE(within(b.sampled.any_missing, 2.0 / 9.0));
  EXPECT_NEAR(b.closed_form, 6.0 / 9.0, 1e-15);
  EXPECT_TRUE(b.closed_form_mismatch);
  EXPECT_NEAR(b.closed_form_ratio, 3.0, 1e-12);
  EXPECT_THROW(oracle_bernoulli_missing(1000, 1000, 100000, 0), ConfigError);
}

TEST(RunTrialsTest, DeterministicAndIndependentOfThreadCount) {
  const auto cfg = matching(30, 5, 0.2);
  const auto seeding = Seeding::of(SeedingKind::UniformOneChunk);
  const auto a = run_trials(cfg, seeding, 40, 99);
  const auto b = run_trials(cfg, seeding, 40, 99);
  EXPECT_EQ(a, b);
  const auto c = run_trials(cfg, seeding, 40, 100);
  EXPECT_NE(a, c);
  EXPECT_THROW(run_trials(cfg, seeding, 0, 1), ConfigError);
}

TEST(EstimateEventTest, SpreadingRegimes) {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::Spreading;
  cfg.roots = 20;
  cfg.chunks = 200;
  const auto roots = Seeding::of(SeedingKind::EmptyPeersPlusRoots);
  const auto success = [](const sim::TrialReport& r) { return r.spread_succeeded; };
  cfg.alpha_expert = 0.0;
  EXPECT_EQ(estimate_event(cfg, roots, success, 50, 1).mean, 1.0);
  cfg.alpha_expert = 0.3;
  EXPECT_LT(estimate_event(cfg, roots, success, 200, 2).mean, 0.05);
  cfg.alpha_expert = 0.02;
  EXPECT_GT(estimate_event(cfg, roots, success, 200, 3).mean, 0.95);
}

TEST(SurvivalSummaryTest, CensoringAndMedian) {
  std::vector<sim::TrialReport> reports(3);
  reports[0].died = true;
  reports[0].survival_time = 4;
  reports[1].censored = true;
  reports[1].survival_time = 100;
  reports[2].died = true;
  reports[2].survival_time = 8;
  const auto s = summarize_survival(reports, 0);
  EXPECT_EQ(s.died, 2u);
  EXPECT_EQ(s.censored, 1u);
  ASSERT_TRUE(s.median.has_value());
  EXPECT_EQ(*s.median, 8.0);
  ASSERT_TRUE(s.mean_uncensored.has_value());
  EXPECT_EQ(s.mean_uncensored->mean, 6.0);

  reports[2].died = false;
  reports[2].censored = true;
  const auto t = summarize_survival(reports, 0);
  EXPECT_FALSE(t.median.has_value());
  EXPECT_TRUE(std::isinf(t.median_or_infinity()));
}

TEST(GridTest, LinearGrid) {
  EXPECT_EQ(linear_grid(0.0, 0.6, 0.05).size(), 13u);
  EXPECT_EQ(linear_grid(0.1, 0.1, 0.05).size(), 1u);
  EXPECT_THROW(linear_grid(0.5, 0.1, 0.05), ConfigError);
  EXPECT_THROW(linear_grid(0.0, 1.0, 0.0), ConfigError);
  const std::vector<double> bad{0.1, 0.1};
  EXPECT_THROW(check_grid(bad), ConfigError);
  EXPECT_THROW(check_grid(std::vector<double>{}), ConfigError);
}

TEST(SurvivalSweepTest, ChurnRegimes) {
  auto cfg = matching(40, 8, 0.0);
  cfg.max_rounds = 300;
  const std::vector<double> grid{0.0, 0.9};
  const auto result = survival_sweep(cfg, grid, 30, 5);
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[0].survival.censored, 30u);
  EXPECT_EQ(result.rows[0].event.mean, 1.0);
  ASSERT_TRUE(result.rows[1].survival.median.has_value());
  EXPECT_LT(*result.rows[1].survival.median, 50.0);
}

TEST(SweepTest, AlphaAxisRaisesExpertDeparture) {
  auto cfg = matching(20, 4, 0.0);
  cfg.max_rounds = 50;
  cfg.alpha_expert = 0.1;
  const std::vector<double> grid{0.05, 0.3};
  const auto result = sweep(cfg, Seeding::of(SeedingKind::UniformOneChunk), SweepAxis::Alpha, grid, 5, 1);
  EXPECT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(parse_axis("alpha-r"), SweepAxis::AlphaExpert);
  EXPECT_EQ(to_string(SweepAxis::Alpha), "alpha");
  EXPECT_THROW(parse_axis("beta"), ConfigError);
}

TEST(LocateCrossingTest, Interpolates) {
  SweepResult r;
  r.grid = {0.0, 0.1, 0.2};
  r.rows.resize(3);
  for (std::size_t i = 0; i < 3; ++i) r.rows[i].value = r.grid[i];
  r.rows[0].event.mean = 1.0;
  r.rows[1].event.mean = 0.75;
  r.rows[2].event.mean = 0.25;
  ASSERT_TRUE(locate_crossing(r).has_value());
  EXPECT_NEAR(*locate_crossing(r), 0.15, 1e-12);
  r.rows[2].event.mean = 0.6;
  EXPECT_FALSE(locate_crossing(r).has_value());
}

TEST(CompareTest, TotalChurnAgreesTrivially) {
  CompareOptions opts;
  opts.chunks = 4;
  opts.alpha = 1.0;
  opts.peers = 200;
  opts.rounds = 50;
  const auto cmp = meanfield_vs_simulation(opts);
  EXPECT_NEAR(cmp.total_variation, 0.0, 1e-12);
  EXPECT_TRUE(cmp.died);
}

TEST(CompareTest, SingleChunkWithinSampling) {
  CompareOptions opts;
  opts.chunks = 1;
  opts.alpha = 0.2;
  opts.peers = 1000;
  opts.rounds = 2000;
  opts.seed = 8;
  const auto cmp = meanfield_vs_simulation(opts);
  ASSERT_TRUE(cmp.mean_field.converged);
  ASSERT_EQ(cmp.per_state_delta.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    // finite-n luck differs from 1 - 1/e by O(1/n); allow for it
    EXPECT_LE(std::abs(cmp.per_state_delta[i]), 4 * cmp.per_state_std_error[i] + 2e-3) << i;
  }
}

TEST(CompareTest, Deterministic) {
  CompareOptions opts;
  opts.chunks = 5;
  opts.peers = 100;
  opts.rounds = 100;
  opts.seed = 3;
  const auto a = meanfield_vs_simulation(opts);
  const auto b = meanfield_vs_simulation(opts);
  EXPECT_TRUE(std::ranges::equal(a.simulated.values(), b.simulated.values()));
  EXPECT_EQ(a.total_variation, b.total_variation);
}

}  // namespace
}  // namespace swarmlife::harness
