#include "swarmlife/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Exact rational oracle: a! / b^c.
double exact_factorial_ratio(unsigned a, unsigned b, unsigned c) {
  cpp_int num = 1;
  for (unsigned i = 2; i <= a; ++i) num *= i;
  cpp_int den = 1;
  for (unsigned i = 0; i < c; ++i) den *= b;
  return static_cast<double>(cpp_rational(num, den));
}

TEST(DeterministicBoundsTest, Examples) {
  EXPECT_DOUBLE_EQ(deterministic_model_bounds(4, 1).exact_missing_one_chunk, 0.09375);

  const auto n9 = deterministic_model_bounds(9, 1);
  EXPECT_NEAR(n9.exact_missing_one_chunk, 4480.0 / 4782969.0, 1e-17);
  EXPECT_NEAR(n9.stirling_bound.raw, 9.0 * std::exp(-9.0), 1e-17);
  EXPECT_TRUE(n9.stirling_bound_holds);

  const auto n3 = deterministic_model_bounds(3, 1);
  EXPECT_NEAR(n3.exact_missing_one_chunk, 2.0 / 9.0, 1e-16);
  EXPECT_NEAR(n3.stirling_bound.raw, 3.0 * std::exp(-3.0), 1e-16);
  EXPECT_FALSE(n3.stirling_bound_holds);
}

TEST(DeterministicBoundsTest, ExactValueMatchesRationalOracle) {
  for (unsigned n = 1; n <= 20; ++n) {
    const double oracle = exact_factorial_ratio(n, n, n);
    for (std::uint64_t k : {1u, 4u, 1000u}) {
      const auto r = deterministic_model_bounds(n, k);
      ASSERT_NEAR(r.exact_missing_one_chunk, oracle, 1e-14 * oracle) << n;
      ASSERT_EQ(r.union_bound.raw, static_cast<double>(k) * r.exact_missing_one_chunk);
    }
  }
}

TEST(DeterministicBoundsTest, StirlingStepFailsOnlyForSmallN) {
  for (std::uint64_t n = 3; n <= 6; ++n) EXPECT_FALSE(deterministic_model_bounds(n, 5).stirling_bound_holds) << n;
  for (std::uint64_t n = 7; n <= 400; ++n) EXPECT_TRUE(deterministic_model_bounds(n, 5).stirling_bound_holds) << n;
}

TEST(DeterministicBoundsTest, ClampedFieldsKeepRawValue) {
  const auto r = deterministic_model_bounds(2, 10);
  EXPECT_DOUBLE_EQ(r.union_bound.raw, 5.0);
  EXPECT_EQ(r.union_bound.value, 1.0);
  EXPECT_THROW(deterministic_model_bounds(0, 1), ConfigError);
}

TEST(SurvivalScaleTest, Examples) {
  EXPECT_NEAR(survival_time_scale(10, 100).epochs, 27.557319223985890, 1e-11);
  EXPECT_NEAR(survival_time_scale(10, 100).rounds, 27.557319223985890 * 10.0, 1e-10);
  const auto immediate = survival_time_scale(2, 2);  // 2 * 1/2 = 1
  EXPECT_TRUE(immediate.immediate_death);
  EXPECT_EQ(immediate.epochs, 1.0);
}

TEST(SurvivalScaleTest, GrowsExponentiallyInN) {
  // n^n / (k n!): consecutive ratios are (1 + 1/n)^n, rising towards e
  const std::uint64_t k = 400;
  for (std::uint64_t n = 20; n < 60; ++n) {
    const double ratio = survival_time_scale(n + 1, k).epochs / survival_time_scale(n, k).epochs;
    const double dn = static_cast<double>(n);
    EXPECT_NEAR(ratio, std::pow(1.0 + 1.0 / dn, dn), 1e-12 * ratio);
    EXPECT_LT(ratio, std::exp(1.0));
  }
}

TEST(BernoulliBoundsTest, ClosedFormAndDirectProduct) {
  const auto r = bernoulli_model_bounds(2, 1);
  EXPECT_NEAR(r.bernoulli_y_exact, 6.0 / 9.0, 1e-15);
  EXPECT_NEAR(r.bernoulli_y_direct, 2.0 / 9.0, 1e-15);
  for (unsigned n = 1; n <= 20; ++n) {
    const auto b = bernoulli_model_bounds(n, 1);
    const double closed = exact_factorial_ratio(n + 1, n + 1, n);
    const double direct = exact_factorial_ratio(n, n + 1, n);
    ASSERT_NEAR(b.bernoulli_y_exact, closed, 1e-14 * closed);
    ASSERT_NEAR(b.bernoulli_y_direct, direct, 1e-14 * direct);
  }
}

TEST(BernoulliBoundsTest, ClosedFormExceedsExponentialFloor) {
  for (std::uint64_t n = 1; n <= 50; ++n) {
    EXPECT_GT(bernoulli_model_bounds(n, 1).bernoulli_y_exact, std::exp(-static_cast<double>(n + 1)));
  }
}

TEST(BernoulliBoundsTest, DeadLowerBoundIncreasesWithK) {
  for (std::uint64_t n : {2u, 5u, 10u}) {
    double previous = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 1; k < 2'000'000'000ULL; k *= 3) {
      const auto r = bernoulli_model_bounds(n, k);
      if (previous < 1.0 - 1e-12) {
        ASSERT_GT(r.z_dead_lower.raw, previous) << n << " " << k;
      } else {
        ASSERT_GE(r.z_dead_lower.raw, previous) << n << " " << k;
      }
      previous = r.z_dead_lower.raw;
      ASSERT_GE(r.z_dead_lower.value, 0.0);
      ASSERT_LE(r.z_dead_lower.value, 1.0);
    }
  }
}

TEST(BernoulliBoundsTest, DeadLowerBoundTendsToOneAtCriticalK) {
  // k = (log n/(n+1)) e^{n+1} scaled up by n^5 so the Chernoff term also vanishes
  double previous = -1.0;
  for (std::uint64_t n = 4; n <= 12; ++n) {
    const double dn = static_cast<double>(n);
    const double k = std::log(dn) / (dn + 1.0) * std::exp(dn + 1.0) * std::pow(dn, 5);
    const auto r = bernoulli_model_bounds(n, static_cast<std::uint64_t>(k));
    EXPECT_GE(r.z_dead_lower.raw, previous);
    previous = r.z_dead_lower.raw;
  }
  EXPECT_GT(previous, 0.9);
}

TEST(BernoulliBoundsTest, ComponentFormulas) {
  const std::uint64_t n = 3;
  const std::uint64_t k = 5000;
  const auto r = bernoulli_model_bounds(n, k);
  const double g = std::exp(-5000.0 / (2.0 * 27.0 * 4.0));
  EXPECT_NEAR(r.g_shortfall_bound.raw, g, 1e-15);
  EXPECT_NEAR(r.q_bound.raw, 3.0 * g, 1e-15);
  EXPECT_NEAR(r.z_alive_bound.raw, std::exp(-5000.0 * 4.0 / std::exp(4.0)), 1e-15);
  EXPECT_NEAR(r.z_dead_lower.raw, 1.0 - r.z_alive_bound.raw - r.q_bound.raw, 1e-14);
}

TEST(ModelBoundsTest, CombinesBothHalves) {
  const auto r = model_bounds(6, 40);
  EXPECT_EQ(r.exact_missing_one_chunk, deterministic_model_bounds(6, 40).exact_missing_one_chunk);
  EXPECT_EQ(r.z_dead_lower.raw, bernoulli_model_bounds(6, 40).z_dead_lower.raw);
}

}  // namespace
}  // namespace swarmlife::analytic
