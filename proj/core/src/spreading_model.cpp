#include "swarmlife/spreading_model.hpp"

#include <cmath>
#include <limits>

#include "swarmlife/errors.hpp"

namespace swarmlife::analytic {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

double rho_step(double rho, double alpha_root) {
  if (!(rho >= 0.0)) throw ConfigError("rho must be non-negative");
  check_probability(alpha_root, "alpha_root");
  if (rho == 0.0) return 0.0;
  if (std::isinf(rho)) return alpha_root < 1.0 ? kInfinity : 0.0;
  // log of the result; exp overflows past ~709.78
  const double log_next = std::log1p(-alpha_root) + rho + std::log(rho);
  if (log_next > std::log(std::numeric_limits<double>::max())) return kInfinity;
  return (1.0 - alpha_root) * std::exp(rho) * rho;
}

bool spreading_succeeds(double rho0, double alpha_root) {
  if (!(rho0 >= 0.0)) throw ConfigError("rho0 must be non-negative");
  check_probability(alpha_root, "alpha_root");
  return (1.0 - alpha_root) * std::exp(rho0) >= 1.0;
}

double spreading_threshold(double roots, double chunks) {
  if (!(roots >= 1.0) || !(chunks >= 1.0)) throw ConfigError("need roots >= 1 and chunks >= 1");
  return -std::expm1(-roots / chunks);
}

double rho_fixed_point(double alpha_root) {
  check_probability(alpha_root, "alpha_root");
  if (alpha_root == 1.0) return kInfinity;
  return -std::log1p(-alpha_root);
}

double expected_undispatched_step(double undispatched, double roots) {
  if (!(undispatched >= 0.0) || !(roots >= 0.0)) {
    throw ConfigError("expected counts must be non-negative");
  }
  if (undispatched == 0.0) return 0.0;
  return undispatched * std::exp(-roots / undispatched);
}

SpreadingTrajectory spreading_trajectory(double roots, double chunks, double alpha_root,
                                         std::size_t rounds, double finished_below) {
  if (!(roots >= 0.0) || !(chunks > 0.0)) throw ConfigError("need roots >= 0 and chunks > 0");
  check_probability(alpha_root, "alpha_root");
  SpreadingTrajectory traj;
  double r = roots;
  double k = chunks;
  for (std::size_t t = 0;; ++t) {
    traj.expected_roots.push_back(r);
    traj.expected_undispatched.push_back(k);
    traj.rho.push_back(k > 0.0 ? r / k : kInfinity);
    if (t == rounds || k <= finished_below || k == 0.0) break;
    k = expected_undispatched_step(k, r);
    // E[R_t] = (1 - alpha_root)^t R, evaluated directly to avoid drift
    r = roots * std::pow(1.0 - alpha_root, static_cast<double>(t + 1));
  }
  return traj;
}

}  // namespace swarmlife::analytic
