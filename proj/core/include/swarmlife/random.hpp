#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "swarmlife/chunk_set.hpp"

namespace swarmlife {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of the stream-th independent substream of a master seed. Streams are
// addressed by index, so adding trials never perturbs earlier ones.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Deterministic random stream. The engine is std::mt19937_64; the
/// distributions are implemented here so draws are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
  }

 private:
  std::mt19937_64 engine_;
};

// Replaces `out` with a uniformly random subset of {0..capacity-1} of the
// given size. `scratch` is reused storage for the partial shuffle.
void sample_subset(Rng& rng, std::size_t capacity, std::size_t size, ChunkSet& out,
                   std::vector<ChunkId>& scratch);

}  // namespace swarmlife
