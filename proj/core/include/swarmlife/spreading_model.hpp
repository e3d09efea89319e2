#pragma once

#include <cstddef>
#include <vector>

namespace swarmlife::analytic {

// rho -> (1 - alpha_root) * e^rho * rho. Saturates to +infinity on overflow.
double rho_step(double rho, double alpha_root);

// Whether the root/undispatched ratio grows from rho0: (1 - alpha_root) e^rho0 >= 1.
bool spreading_succeeds(double rho0, double alpha_root);

// Largest root departure probability for which R roots spread k chunks:
// 1 - e^{-R/k}.
double spreading_threshold(double roots, double chunks);

// Unstable fixed point of rho_step: -ln(1 - alpha_root). Infinite at alpha_root = 1.
double rho_fixed_point(double alpha_root);

// Expected undispatched chunks after one round: K e^{-R/K}; 0 when K = 0.
double expected_undispatched_step(double undispatched, double roots);

struct SpreadingTrajectory {
  std::vector<double> rho;
  std::vector<double> expected_roots;
  std::vector<double> expected_undispatched;
};

/// Mean-field trajectory from R roots and k undispatched chunks for
/// `rounds` rounds (rounds + 1 points including t = 0). Stops early once
/// fewer than `finished_below` chunks are expected to remain.
SpreadingTrajectory spreading_trajectory(double roots, double chunks, double alpha_root,
                                         std::size_t rounds, double finished_below = 0.0);

}  // namespace swarmlife::analytic
