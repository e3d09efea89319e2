#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace swarmlife {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient. C(a, b) = 0 for b > a and C(0, 0) = 1.
BigInt binom(std::uint64_t a, std::uint64_t b);

/// Probability that an uploader holding j uniformly random chunks has at
/// least one chunk a customer with i chunks lacks: 1 - C(i,j)/C(k,j).
///
/// Evaluated as 1 - prod_{m<j} (i-m)/(k-m) in extended precision. Throws
/// std::out_of_range unless i <= k and j <= k.
double delta(std::size_t i, std::size_t j, std::size_t k);

// Same quantity through exact rational arithmetic on binom(); one rounding
// at the end. Slow, meant for cross-checks.
double delta_exact(std::size_t i, std::size_t j, std::size_t k);

/// delta(i, j, k) for fixed k. Tabulated when k <= kMaxTabulated, otherwise
/// computed on demand.
class DeltaTable {
 public:
  static constexpr std::size_t kMaxTabulated = 2000;

  explicit DeltaTable(std::size_t k);

  std::size_t chunks() const noexcept { return k_; }
  bool tabulated() const noexcept { return !table_.empty(); }
  double operator()(std::size_t i, std::size_t j) const;

 private:
  std::size_t k_;
  std::vector<double> table_;  // row-major, (k+1) x (k+1), indexed [i][j]
};

}  // namespace swarmlife
