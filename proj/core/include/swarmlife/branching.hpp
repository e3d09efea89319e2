#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "swarmlife/types.hpp"

namespace swarmlife::analytic {

// One step of the chunk-lineage generating function: ((f + 1) / 2)^2.
// The offspring law is {0: 1/4, 1: 1/2, 2: 1/4} (duplicate, then lose each
// copy with probability 1/2).
double gf_step(double f);

struct ExtinctionCurve {
  std::vector<double> extinction;  // F_t(0), t = 0..t_max
  std::vector<double> survival;    // 1 - F_t(0), iterated directly for accuracy
};

ExtinctionCurve extinction_curve(std::size_t t_max);

struct LossCreation {
  double loss = 0.0;           // N (alpha sum_{i<k} i P_i + alpha_R P_k)
  double creation_cap = 0.0;   // (1 - alpha) N (1 - P_0)
  bool sustainable = false;    // creation_cap >= loss
};

// alpha_root defaults to alpha.
LossCreation loss_and_creation(double nodes, const DistributionVector& p, double alpha,
                               std::optional<double> alpha_root = std::nullopt);

// (1 - 1/e) / (2 - 1/e).
double matching_survival_threshold();

// Asymptotic service probability under random matching: 1 - 1/e.
double asymptotic_luck();

// Probability that a given node is picked as server by at least one of the
// other n-1 nodes, each choosing uniformly among its n-1 others:
// 1 - (1 - 1/(n-1))^(n-1). Equal to the probability that a given customer is
// served. Throws ConfigError for n < 2.
double luck_value(std::size_t n);

// Birth-death analogy: mean offspring (1 - alpha)/alpha. Diagnostic only.
double birth_death_mean_offspring(double alpha);

}  // namespace swarmlife::analytic
