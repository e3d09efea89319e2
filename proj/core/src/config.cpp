#include "swarmlife/config.hpp"

#include <cmath>
#include <string>

#include "swarmlife/errors.hpp"
#include "swarmlife/types.hpp"

namespace swarmlife {

std::string_view to_string(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::Spreading: return "spreading";
    case Scenario::DistributedOptimistic: return "optimistic";
    case Scenario::RandomMatching: return "matching";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "spreading" || name == "Spreading") return Scenario::Spreading;
  if (name == "optimistic" || name == "distributed-optimistic" || name == "DistributedOptimistic")
    return Scenario::DistributedOptimistic;
  if (name == "matching" || name == "random-matching" || name == "RandomMatching")
    return Scenario::RandomMatching;
  throw ConfigError("unknown scenario '" + std::string(name) +
                    "' (expected spreading, optimistic or matching)");
}

std::string_view to_string(SeedingKind kind) noexcept {
  switch (kind) {
    case SeedingKind::EmptyPeersPlusRoots: return "roots";
    case SeedingKind::Staircase: return "staircase";
    case SeedingKind::UniformOneChunk: return "uniform-one";
    case SeedingKind::HalfEmptyHalfOne: return "half-one";
    case SeedingKind::ExplicitHistogram: return "histogram";
  }
  return "unknown";
}

SeedingKind parse_seeding(std::string_view name) {
  if (name == "roots" || name == "empty") return SeedingKind::EmptyPeersPlusRoots;
  if (name == "staircase") return SeedingKind::Staircase;
  if (name == "uniform-one") return SeedingKind::UniformOneChunk;
  if (name == "half-one") return SeedingKind::HalfEmptyHalfOne;
  if (name == "histogram") return SeedingKind::ExplicitHistogram;
  throw ConfigError("unknown seeding '" + std::string(name) +
                    "' (expected roots, staircase, uniform-one, half-one or histogram)");
}

Seeding default_seeding(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::Spreading: return Seeding::of(SeedingKind::EmptyPeersPlusRoots);
    case Scenario::DistributedOptimistic: return Seeding::of(SeedingKind::Staircase);
    case Scenario::RandomMatching: return Seeding::of(SeedingKind::UniformOneChunk);
  }
  return Seeding::of(SeedingKind::EmptyPeersPlusRoots);
}

namespace {

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  if (peers < 1 && scenario != Scenario::Spreading) throw ConfigError("peers must be >= 1");
  if (chunks < 1) throw ConfigError("chunks must be >= 1");
  if (chunks > 0xffffffffULL) throw ConfigError("chunks exceeds the chunk id range");
  check_probability(alpha, "alpha");
  if (alpha_expert) {
    check_probability(*alpha_expert, "alpha-r");
    if (*alpha_expert < alpha) {
      throw ConfigError("alpha-r must be >= alpha (got alpha-r=" + std::to_string(*alpha_expert) +
                        ", alpha=" + std::to_string(alpha) + ")");
    }
  }
  if (max_rounds < 1) throw ConfigError("max-rounds must be >= 1");
  if (scenario == Scenario::Spreading && roots < 1) {
    throw ConfigError("the spreading scenario needs at least one root (--roots)");
  }
}

DistributionVector::DistributionVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw ConfigError("distribution vector must have at least one entry");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("distribution vector entries must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ConfigError("distribution vector must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

DistributionVector DistributionVector::uniform(std::size_t k) {
  std::vector<double> p(k + 1, 1.0 / static_cast<double>(k + 1));
  return DistributionVector(std::move(p));
}

DistributionVector DistributionVector::point_mass(std::size_t k, std::size_t state) {
  if (state > k) throw ConfigError("point mass state outside 0..k");
  std::vector<double> p(k + 1, 0.0);
  p[state] = 1.0;
  return DistributionVector(std::move(p));
}

DistributionVector DistributionVector::from_counts(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw ConfigError("cannot normalize an empty histogram");
  std::vector<double> p;
  p.reserve(counts.size());
  for (auto c : counts) p.push_back(static_cast<double>(c) / static_cast<double>(total));
  return DistributionVector(std::move(p));
}

double DistributionVector::mass() const noexcept {
  double sum = 0.0;
  for (double v : p_) sum += v;
  return sum;
}

double total_variation(const DistributionVector& a, const DistributionVector& b) {
  if (a.size() != b.size()) throw ConfigError("total_variation: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

}  // namespace swarmlife
