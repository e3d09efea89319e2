#include "swarmlife/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {

ClampedValue ClampedValue::of(double raw_value) {
  return ClampedValue{std::clamp(raw_value, 0.0, 1.0), raw_value};
}

namespace {

void check_sizes(std::uint64_t n, std::uint64_t k) {
  if (n < 1 || k < 1) throw ConfigError("bounds need n >= 1 and k >= 1");
}

// Neumaier-compensated sum of log(i / denominator) for i = first..last.
double sum_log_ratio(std::uint64_t first, std::uint64_t last, double denominator) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint64_t i = first; i <= last; ++i) {
    const double term = std::log(static_cast<double>(i) / denominator);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace

double log_staircase_absence(std::uint64_t n) {
  return sum_log_ratio(1, n, static_cast<double>(n));
}

double log_bernoulli_closed_form(std::uint64_t n) {
  // (n+1)!/(n+1)^n = prod_{i=2}^{n+1} i/(n+1)
  return sum_log_ratio(2, n + 1, static_cast<double>(n + 1));
}

double log_bernoulli_direct(std::uint64_t n) {
  return sum_log_ratio(1, n, static_cast<double>(n + 1));
}

BoundsReport deterministic_model_bounds(std::uint64_t n, std::uint64_t k) {
  check_sizes(n, k);
  BoundsReport report;
  report.n = n;
  report.k = k;
  const double log_exact = log_staircase_absence(n);
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  report.exact_missing_one_chunk = std::exp(log_exact);
  report.union_bound = ClampedValue::of(dk * report.exact_missing_one_chunk);
  report.stirling_bound = ClampedValue::of(dk * dn * std::exp(-dn));
  // compare in log space so huge n still gives a meaningful flag
  report.stirling_bound_holds = log_exact <= std::log(dn) - dn;
  return report;
}

BoundsReport bernoulli_model_bounds(std::uint64_t n, std::uint64_t k) {
  check_sizes(n, k);
  BoundsReport report;
  report.n = n;
  report.k = k;
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  report.bernoulli_y_exact = std::exp(log_bernoulli_closed_form(n));
  report.bernoulli_y_direct = std::exp(log_bernoulli_direct(n));

  // k (n+1) / e^{n+1}, in log space
  const double z_exponent = std::exp(std::log(dk) + std::log(dn + 1.0) - (dn + 1.0));
  const double g_exponent = dk / (2.0 * dn * dn * dn * (dn + 1.0));
  report.z_alive_bound = ClampedValue::of(std::exp(-z_exponent));
  report.g_shortfall_bound = ClampedValue::of(std::exp(-g_exponent));
  report.q_bound = ClampedValue::of(dn * std::exp(-g_exponent));
  report.z_dead_lower =
      ClampedValue::of(-std::expm1(-z_exponent) - dn * std::exp(-g_exponent));
  return report;
}

BoundsReport model_bounds(std::uint64_t n, std::uint64_t k) {
  BoundsReport report = deterministic_model_bounds(n, k);
  const BoundsReport lower = bernoulli_model_bounds(n, k);
  report.bernoulli_y_exact = lower.bernoulli_y_exact;
  report.bernoulli_y_direct = lower.bernoulli_y_direct;
  report.z_alive_bound = lower.z_alive_bound;
  report.g_shortfall_bound = lower.g_shortfall_bound;
  report.q_bound = lower.q_bound;
  report.z_dead_lower = lower.z_dead_lower;
  return report;
}

SurvivalScale survival_time_scale(std::uint64_t n, std::uint64_t k) {
  check_sizes(n, k);
  SurvivalScale scale;
  const double log_fail = std::log(static_cast<double>(k)) + log_staircase_absence(n);
  if (log_fail >= 0.0) {
    scale.epochs = 1.0;
    scale.immediate_death = true;
  } else {
    scale.epochs = std::exp(-log_fail);
  }
  scale.rounds = scale.epochs * static_cast<double>(k) / static_cast<double>(n);
  return scale;
}

}  // namespace swarmlife::analytic
