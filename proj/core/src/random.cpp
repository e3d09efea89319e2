#include "swarmlife/random.hpp"

#include <numeric>

#include "swarmlife/errors.hpp"

namespace swarmlife {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ConfigError("Rng::below: bound must be positive");
  // Lemire's multiply-shift with rejection; unbiased.
  unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

void sample_subset(Rng& rng, std::size_t capacity, std::size_t size, ChunkSet& out,
                   std::vector<ChunkId>& scratch) {
  if (size > capacity) throw ConfigError("sample_subset: size exceeds capacity");
  if (out.capacity() != capacity) {
    out = ChunkSet(capacity);
  } else {
    out.clear();
  }
  if (size == capacity) {
    out.fill();
    return;
  }
  scratch.resize(capacity);
  std::iota(scratch.begin(), scratch.end(), ChunkId{0});
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(capacity - i));
    std::swap(scratch[i], scratch[j]);
    out.insert(scratch[i]);
  }
}

}  // namespace swarmlife
