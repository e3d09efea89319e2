#include "swarmlife/mean_field.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "swarmlife/branching.hpp"
#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {
namespace {

MeanFieldParams params(std::size_t k, double alpha, double luck,
                       std::optional<double> expert = std::nullopt) {
  MeanFieldParams p;
  p.chunks = k;
  p.alpha = alpha;
  p.alpha_expert = expert;
  p.luck = luck;
  return p;
}

DistributionVector random_distribution(std::mt19937_64& gen, std::size_t k) {
  std::vector<double> w(k + 1);
  std::exponential_distribution<double> exp(1.0);
  for (auto& x : w) x = exp(gen);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return DistributionVector(w);
}

TEST(MeanFieldTransitionTest, FixedPointsOfDegenerateInputs) {
  const auto full = DistributionVector::point_mass(6, 6);
  EXPECT_TRUE(std::ranges::equal(mean_field_transition(full, params(6, 0.0, 0.6)).values(), full.values()));
  const auto empty = DistributionVector::point_mass(6, 0);
  EXPECT_TRUE(std::ranges::equal(mean_field_transition(empty, params(6, 0.3, 0.6)).values(), empty.values()));
}

TEST(MeanFieldTransitionTest, SingleChunkHandEvaluation) {
  // k=1: a state-0 peer gains with luck * Delta(0,1) * P_1 = 1/2
  const DistributionVector half(std::vector<double>{0.5, 0.5});
  const auto next = mean_field_transition(half, params(1, 0.0, 1.0));
  EXPECT_NEAR(next[0], 0.25, 1e-15);
  EXPECT_NEAR(next[1], 0.75, 1e-15);
}

TEST(MeanFieldTransitionTest, TotalChurnResetsEveryone) {
  std::mt19937_64 gen(3);
  const auto p = random_distribution(gen, 8);
  const auto next = mean_field_transition(p, params(8, 1.0, 0.6));
  EXPECT_NEAR(next[0], 1.0, 1e-15);
}

TEST(MeanFieldTransitionTest, ConservesMassAndStaysNonNegative) {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t k = 1 + gen() % 40;
    const double alpha = std::uniform_real_distribution<double>(0, 1)(gen);
    const double expert = std::uniform_real_distribution<double>(alpha, 1)(gen);
    const double luck = std::uniform_real_distribution<double>(0, 1)(gen);
    const auto next = mean_field_transition(random_distribution(gen, k), params(k, alpha, luck, expert));
    ASSERT_NEAR(next.mass(), 1.0, 1e-12);
    for (double v : next.values()) ASSERT_GE(v, 0.0);
  }
}

TEST(MeanFieldTransitionTest, ExpertDepartureOnlyAffectsStateK) {
  const DistributionVector p(std::vector<double>{0.2, 0.3, 0.5});
  const auto base = mean_field_transition(p, params(2, 0.1, 0.7));
  const auto churny = mean_field_transition(p, params(2, 0.1, 0.7, 0.6));
  EXPECT_NEAR(churny[0] - base[0], 0.5 * 0.5, 1e-15);
  EXPECT_NEAR(base[2] - churny[2], 0.5 * 0.5, 1e-15);
  EXPECT_NEAR(churny[1], base[1], 1e-15);
}

TEST(MeanFieldTransitionTest, ValidatesParameters) {
  const auto p = DistributionVector::uniform(3);
  EXPECT_THROW(mean_field_transition(p, params(4, 0.1, 0.5)), ConfigError);
  EXPECT_THROW(mean_field_transition(p, params(3, -0.1, 0.5)), ConfigError);
  EXPECT_THROW(mean_field_transition(p, params(3, 0.1, 1.5)), ConfigError);
}

TEST(SteadyStateTest, NoChurnDrainsToFull) {
  const auto model = steady_state_solve(params(5, 0.0, 0.6));
  ASSERT_TRUE(model.converged);
  EXPECT_NEAR(model.p[5], 1.0, 1e-9);
}

TEST(SteadyStateTest, ResultIsAFixedPoint) {
  for (double alpha : {0.02, 0.1, 0.35}) {
    const auto prm = params(10, alpha, asymptotic_luck());
    const auto model = steady_state_solve(prm);
    ASSERT_TRUE(model.converged) << alpha;
    EXPECT_LE(model.residual, 1e-12);
    const auto again = mean_field_transition(model.p, prm);
    for (std::size_t i = 0; i <= 10; ++i) EXPECT_NEAR(again[i], model.p[i], 1e-11);
    EXPECT_NEAR(model.p.mass(), 1.0, 1e-12);
  }
}

TEST(SteadyStateTest, DampingDoesNotChangeTheFixedPoint) {
  const auto prm = params(6, 0.08, 0.63);
  SolveOptions plain;
  plain.damping = 1.0;
  const auto a = steady_state_solve(prm);
  const auto b = steady_state_solve(prm, plain);
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged);
  EXPECT_LT(total_variation(a.p, b.p), 1e-10);
}

TEST(SteadyStateTest, ReportsNonConvergence) {
  SolveOptions opts;
  opts.max_iterations = 3;
  const auto model = steady_state_solve(params(10, 0.05, 0.63), opts);
  EXPECT_FALSE(model.converged);
  EXPECT_EQ(model.iterations, 3u);
  EXPECT_GT(model.residual, opts.tolerance);
}

TEST(SummaryEquationsTest, OnlyTheEmptyStateEquationDisagrees) {
  const auto prm = params(8, 0.1, 0.63);
  const auto model = steady_state_solve(prm);
  const auto r = summary_equation_residuals(model.p, prm);
  ASSERT_EQ(r.size(), 9u);
  for (std::size_t i = 1; i <= 8; ++i) EXPECT_NEAR(r[i], 0.0, 1e-10) << i;
  EXPECT_GT(std::abs(r[0]), 1e-3);
}

}  // namespace
}  // namespace swarmlife::analytic
