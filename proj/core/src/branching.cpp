#include "swarmlife/branching.hpp"

#include <cmath>

#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {

double gf_step(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("gf_step: argument must lie in [0, 1]");
  const double half = 0.5 * (f + 1.0);
  return half * half;
}

ExtinctionCurve extinction_curve(std::size_t t_max) {
  ExtinctionCurve curve;
  curve.extinction.reserve(t_max + 1);
  curve.survival.reserve(t_max + 1);
  // With s = 1 - F the recurrence is s' = s - s^2/4, which keeps full relative
  // precision as s -> 0.
  double s = 1.0;
  for (std::size_t t = 0; t <= t_max; ++t) {
    curve.survival.push_back(s);
    curve.extinction.push_back(1.0 - s);
    s -= 0.25 * s * s;
  }
  return curve;
}

LossCreation loss_and_creation(double nodes, const DistributionVector& p, double alpha,
                               std::optional<double> alpha_root) {
  const double expert = alpha_root.value_or(alpha);
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(expert >= 0.0 && expert <= 1.0)) {
    throw ConfigError("loss_and_creation: probabilities must lie in [0, 1]");
  }
  if (!(nodes >= 0.0)) throw ConfigError("loss_and_creation: node count must be non-negative");
  const std::size_t k = p.chunks();
  double partial = 0.0;
  for (std::size_t i = 1; i < k; ++i) partial += static_cast<double>(i) * p[i];
  LossCreation out;
  out.loss = nodes * (alpha * partial + expert * p[k]);
  out.creation_cap = (1.0 - alpha) * nodes * (1.0 - p[0]);
  out.sustainable = out.creation_cap >= out.loss;
  return out;
}

double matching_survival_threshold() {
  const double served = -std::expm1(-1.0);  // 1 - 1/e
  return served / (1.0 + served);
}

double asymptotic_luck() { return -std::expm1(-1.0); }

double luck_value(std::size_t n) {
  if (n < 2) throw ConfigError("luck_value needs n >= 2");
  const auto others = static_cast<double>(n - 1);
  return -std::expm1(others * std::log1p(-1.0 / others));
}

double birth_death_mean_offspring(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  return (1.0 - alpha) / alpha;
}

}  // namespace swarmlife::analytic
