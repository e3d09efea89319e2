#pragma once

#include <cstdint>

namespace swarmlife::analytic {

/// A probability-like bound clamped to [0, 1]; `raw` is the unclamped value.
struct ClampedValue {
  double value = 0.0;
  double raw = 0.0;

  static ClampedValue of(double raw_value);
};

/// Closed-form probabilities for the staircase (deterministic pipeline) and
/// Bernoulli models of a distributed swarm with n peers and k chunks.
struct BoundsReport {
  std::uint64_t n = 0;
  std::uint64_t k = 0;

  // Staircase model.
  double exact_missing_one_chunk = 0.0;  // n!/n^n
  ClampedValue union_bound;              // k n!/n^n
  ClampedValue stirling_bound;           // k n e^{-n}
  bool stirling_bound_holds = false;     // union_bound.raw <= stirling_bound.raw

  // Bernoulli model.
  double bernoulli_y_exact = 0.0;   // closed form (n+1)!/(n+1)^n
  double bernoulli_y_direct = 0.0;  // prod_i (1 - i/(n+1)) = n!/(n+1)^n
  ClampedValue z_alive_bound;       // e^{-k(n+1)/e^{n+1}}
  ClampedValue g_shortfall_bound;   // e^{-k/(2 n^3 (n+1))}
  ClampedValue q_bound;             // n e^{-k/(2 (n+1) n^3)}
  ClampedValue z_dead_lower;        // 1 - z_alive_bound - q_bound
};

// log(n!/n^n) = sum_{i=1}^{n} log(i/n).
double log_staircase_absence(std::uint64_t n);
// log((n+1)!/(n+1)^n).
double log_bernoulli_closed_form(std::uint64_t n);
// log(n!/(n+1)^n) = sum_{i=1}^{n} log(1 - i/(n+1)).
double log_bernoulli_direct(std::uint64_t n);

// Fills the staircase fields only. Throws ConfigError unless n, k >= 1.
BoundsReport deterministic_model_bounds(std::uint64_t n, std::uint64_t k);
// Fills the Bernoulli fields only.
BoundsReport bernoulli_model_bounds(std::uint64_t n, std::uint64_t k);
// Both halves.
BoundsReport model_bounds(std::uint64_t n, std::uint64_t k);

struct SurvivalScale {
  double epochs = 0.0;           // 1 / min(1, k n!/n^n)
  double rounds = 0.0;           // epochs * k / n
  bool immediate_death = false;  // k n!/n^n >= 1
};

// Mean number of peer-replacement epochs before a missing-chunk event when
// each epoch fails independently with probability k n!/n^n.
SurvivalScale survival_time_scale(std::uint64_t n, std::uint64_t k);

}  // namespace swarmlife::analytic
