#include "swarmlife/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {

void MeanFieldParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (chunks < 1) throw ConfigError("mean field needs k >= 1");
  if (!in_unit(alpha)) throw ConfigError("alpha must lie in [0, 1]");
  if (!in_unit(expert_departure())) throw ConfigError("alpha-r must lie in [0, 1]");
  if (!in_unit(luck)) throw ConfigError("luck must lie in [0, 1]");
}

double upload_success(const DeltaTable& delta, const DistributionVector& p, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) sum += delta(i, j) * p[j];
  return sum;
}

namespace {

void check_shapes(const DistributionVector& p, const MeanFieldParams& params,
                  const DeltaTable& delta) {
  if (p.chunks() != params.chunks || delta.chunks() != params.chunks) {
    throw ConfigError("mean field: distribution has " + std::to_string(p.size()) +
                      " states but k = " + std::to_string(params.chunks));
  }
}

// Per-state probability of a successful upload, luck included; zero at k.
std::vector<double> gain_probabilities(const DistributionVector& p, const MeanFieldParams& params,
                                       const DeltaTable& delta) {
  std::vector<double> gain(params.chunks + 1, 0.0);
  for (std::size_t i = 0; i < params.chunks; ++i) {
    gain[i] = params.luck * upload_success(delta, p, i);
  }
  return gain;
}

}  // namespace

DistributionVector mean_field_transition(const DistributionVector& p,
                                         const MeanFieldParams& params,
                                         const DeltaTable& delta) {
  params.validate();
  check_shapes(p, params, delta);
  const std::size_t k = params.chunks;
  const double stay = 1.0 - params.alpha;
  const double expert = params.expert_departure();
  const std::vector<double> gain = gain_probabilities(p, params, delta);

  std::vector<double> next(k + 1, 0.0);
  double reset = expert * p[k];
  for (std::size_t i = 0; i < k; ++i) reset += params.alpha * p[i];
  next[0] = reset + stay * p[0] * (1.0 - gain[0]);
  for (std::size_t i = 1; i < k; ++i) {
    next[i] = stay * (p[i] * (1.0 - gain[i]) + p[i - 1] * gain[i - 1]);
  }
  next[k] = (1.0 - expert) * p[k] + stay * p[k - 1] * gain[k - 1];
  return DistributionVector(std::move(next));
}

DistributionVector mean_field_transition(const DistributionVector& p,
                                         const MeanFieldParams& params) {
  return mean_field_transition(p, params, DeltaTable(params.chunks));
}

namespace {

double max_abs_change(const DistributionVector& a, const DistributionVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

DistributionVector blend(const DistributionVector& current, const DistributionVector& mapped,
                         double damping) {
  std::vector<double> out(current.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (1.0 - damping) * current[i] + damping * mapped[i];
    sum += out[i];
  }
  // Rounding drift only; both inputs carry unit mass.
  for (double& v : out) v /= sum;
  return DistributionVector(std::move(out));
}

}  // namespace

MeanFieldModel steady_state_solve(const MeanFieldParams& params, const SolveOptions& options) {
  params.validate();
  if (!(options.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ConfigError("damping must lie in (0, 1]");
  }
  const DeltaTable delta(params.chunks);

  MeanFieldModel model;
  model.params = params;
  model.p = options.initial.value_or(DistributionVector::uniform(params.chunks));
  if (model.p.chunks() != params.chunks) {
    throw ConfigError("initial distribution must have k+1 entries");
  }

  for (std::size_t it = 0;; ++it) {
    const DistributionVector mapped = mean_field_transition(model.p, params, delta);
    model.residual = max_abs_change(mapped, model.p);
    model.iterations = it;
    if (model.residual < options.tolerance) {
      model.converged = true;
      break;
    }
    if (it >= options.max_iterations) break;
    model.p = blend(model.p, mapped, options.damping);
  }
  return model;
}

std::vector<double> summary_equation_residuals(const DistributionVector& p,
                                               const MeanFieldParams& params) {
  params.validate();
  const DeltaTable delta(params.chunks);
  check_shapes(p, params, delta);
  const std::size_t k = params.chunks;
  const double stay = 1.0 - params.alpha;
  std::vector<double> gain(k + 1, 0.0);
  for (std::size_t i = 0; i <= k; ++i) gain[i] = params.luck * upload_success(delta, p, i);

  std::vector<double> residuals(k + 1, 0.0);
  residuals[0] = p[0] - (params.alpha * p.mass() + stay * (1.0 - gain[0]));
  for (std::size_t i = 1; i <= k; ++i) {
    residuals[i] = p[i] - stay * (p[i] * (1.0 - gain[i]) + p[i - 1] * gain[i - 1]);
  }
  return residuals;
}

}  // namespace swarmlife::analytic
