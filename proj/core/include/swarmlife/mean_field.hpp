#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "swarmlife/combinatorics.hpp"
#include "swarmlife/types.hpp"

namespace swarmlife::analytic {

/// Parameters of the chunk-count mean-field chain.
struct MeanFieldParams {
  std::size_t chunks = 0;              // k
  double alpha = 0.0;                  // departure of peers in states 0..k-1
  std::optional<double> alpha_expert;  // departure in state k; defaults to alpha
  double luck = 0.0;                   // service probability per round

  double expert_departure() const noexcept { return alpha_expert.value_or(alpha); }
  void validate() const;
};

/// Probability that a lucky peer in state i gains a chunk:
/// sum_j Delta(i, j) P_j.
double upload_success(const DeltaTable& delta, const DistributionVector& p, std::size_t i);

/// One synchronous step: a surviving peer in state i < k moves to i+1 with
/// probability luck * sum_j Delta(i,j) P_j; departing peers restart at 0.
DistributionVector mean_field_transition(const DistributionVector& p,
                                         const MeanFieldParams& params,
                                         const DeltaTable& delta);
DistributionVector mean_field_transition(const DistributionVector& p,
                                         const MeanFieldParams& params);

struct SolveOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
  double damping = 0.5;  // weight of the mapped iterate
  std::optional<DistributionVector> initial;  // uniform over 0..k when unset
};

struct MeanFieldModel {
  MeanFieldParams params;
  DistributionVector p{std::vector<double>{1.0}};
  double residual = 0.0;  // max_i |T(P)_i - P_i| at the returned iterate
  std::size_t iterations = 0;
  bool converged = false;
};

/// Damped fixed-point iteration P <- (1-d) P + d T(P) until the undamped
/// residual drops below tolerance. Non-convergence is reported through
/// `converged`, never thrown.
MeanFieldModel steady_state_solve(const MeanFieldParams& params, const SolveOptions& options = {});

/// Residuals of the literal summary equations
///   P_0 = alpha sum_j P_j + (1 - alpha)(1 - luck sum_j Delta(0,j) P_j)
///   P_i = (1 - alpha)(P_i (1 - L_i) + P_{i-1} L_{i-1}),  i > 0
/// Diagnostic only: the P_0 form does not conserve mass, so its residual is
/// not zero at the fixed point of mean_field_transition.
std::vector<double> summary_equation_residuals(const DistributionVector& p,
                                               const MeanFieldParams& params);

}  // namespace swarmlife::analytic
