#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swarmlife/chunk_set.hpp"

namespace swarmlife {

using NodeId = std::uint64_t;

struct PeerState {
  NodeId id = 0;
  ChunkSet chunks;
  bool is_root = false;
  std::uint64_t age = 0;  // rounds survived since joining
};

/// Probability vector over per-peer chunk counts 0..k.
class DistributionVector {
 public:
  static constexpr double kTolerance = 1e-12;

  // Throws ConfigError unless all entries are non-negative and sum to 1
  // within kTolerance.
  explicit DistributionVector(std::vector<double> p);

  static DistributionVector uniform(std::size_t k);
  static DistributionVector point_mass(std::size_t k, std::size_t state);
  // Normalized histogram of integer counts; throws on an all-zero histogram.
  static DistributionVector from_counts(std::span<const std::uint64_t> counts);

  std::size_t chunks() const noexcept { return p_.size() - 1; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const noexcept { return p_; }
  double mass() const noexcept;

 private:
  std::vector<double> p_;
};

double total_variation(const DistributionVector& a, const DistributionVector& b);

}  // namespace swarmlife
