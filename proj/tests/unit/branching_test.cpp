#include "swarmlife/branching.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {
namespace {

TEST(GeneratingFunctionTest, Examples) {
  EXPECT_EQ(gf_step(0.0), 0.25);
  EXPECT_EQ(gf_step(1.0), 1.0);
  EXPECT_EQ(gf_step(0.25), 0.390625);
  EXPECT_EQ(gf_step(0.390625), 0.48345947265625);
}

TEST(GeneratingFunctionTest, CriticalMeanOffspring) {
  // f(s) = 1/4 + s/2 + s^2/4: f'(1) = 1
  const double h = 1e-6;
  EXPECT_NEAR((gf_step(1.0) - gf_step(1.0 - h)) / h, 1.0, 1e-5);
}

TEST(ExtinctionCurveTest, IncreasingAndBounded) {
  const auto curve = extinction_curve(2000);
  ASSERT_EQ(curve.extinction.size(), 2001u);
  EXPECT_EQ(curve.extinction[0], 0.0);
  EXPECT_EQ(curve.extinction[1], 0.25);
  EXPECT_EQ(curve.extinction[3], 0.48345947265625);
  for (std::size_t t = 1; t < curve.extinction.size(); ++t) {
    ASSERT_GT(curve.extinction[t], curve.extinction[t - 1]);
    ASSERT_LT(curve.extinction[t], 1.0);
    ASSERT_NEAR(curve.extinction[t] + curve.survival[t], 1.0, 1e-15);
  }
}

TEST(ExtinctionCurveTest, SurvivalDecaysLikeFourOverT) {
  const auto curve = extinction_curve(100000);
  EXPECT_NEAR(1e5 * curve.survival[100000], 3.9994288392857, 1e-9);
  for (std::size_t t : {1000u, 10000u, 100000u}) {
    EXPECT_NEAR(static_cast<double>(t) * curve.survival[t], 4.0, 0.05);
  }
}

TEST(LossCreationTest, Examples) {
  const auto empty = loss_and_creation(100, DistributionVector::point_mass(5, 0), 0.1);
  EXPECT_EQ(empty.loss, 0.0);
  EXPECT_EQ(empty.creation_cap, 0.0);
  EXPECT_TRUE(empty.sustainable);

  const auto uniform = loss_and_creation(10, DistributionVector::uniform(1), 0.2, 0.5);
  EXPECT_NEAR(uniform.loss, 10 * (0.2 * 0.0 + 0.5 * 0.5), 1e-15);
  EXPECT_NEAR(uniform.creation_cap, 0.8 * 10 * 0.5, 1e-15);
  EXPECT_TRUE(uniform.sustainable);

  const auto heavy = loss_and_creation(10, DistributionVector::point_mass(4, 3), 0.5);
  EXPECT_NEAR(heavy.loss, 10 * 0.5 * 3, 1e-15);
  EXPECT_NEAR(heavy.creation_cap, 5.0, 1e-15);
  EXPECT_FALSE(heavy.sustainable);
}

TEST(MatchingThresholdTest, Value) {
  const double e1 = std::exp(-1.0);
  EXPECT_NEAR(matching_survival_threshold(), (1 - e1) / (2 - e1), 1e-16);
  EXPECT_NEAR(matching_survival_threshold(), 0.38730016321971796, 1e-16);
  EXPECT_NEAR(asymptotic_luck(), 0.6321205588285577, 1e-16);
}

TEST(LuckTest, FiniteNetworks) {
  EXPECT_EQ(luck_value(2), 1.0);
  EXPECT_NEAR(luck_value(3), 0.75, 1e-15);
  EXPECT_NEAR(luck_value(4), 1.0 - 8.0 / 27.0, 1e-15);
  EXPECT_THROW(luck_value(1), ConfigError);
}

TEST(LuckTest, DecreasesMonotonicallyToAsymptote) {
  double previous = 1.0;
  for (std::size_t n = 3; n <= 1'000'000; n = n * 3 / 2 + 1) {
    const double value = luck_value(n);
    ASSERT_LT(value, previous);
    ASSERT_GT(value, asymptotic_luck());
    previous = value;
  }
  EXPECT_NEAR(luck_value(1'000'000), asymptotic_luck(), 1e-6);
}

TEST(BirthDeathTest, MeanOffspring) {
  EXPECT_NEAR(birth_death_mean_offspring(0.5), 1.0, 1e-15);
  EXPECT_GT(birth_death_mean_offspring(0.4), 1.0);
  EXPECT_LT(birth_death_mean_offspring(0.6), 1.0);
}

}  // namespace
}  // namespace swarmlife::analytic
