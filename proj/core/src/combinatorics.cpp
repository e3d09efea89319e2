#include "swarmlife/combinatorics.hpp"

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace swarmlife {

namespace {

void check_range(std::size_t i, std::size_t j, std::size_t k) {
  if (i > k || j > k) {
    throw std::out_of_range("delta: need i <= k and j <= k (i=" + std::to_string(i) +
                            ", j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
  }
}

}  // namespace

BigInt binom(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt result = 1;
  // Each prefix product is itself a binomial coefficient, so the division is exact.
  for (std::uint64_t m = 1; m <= b; ++m) {
    result *= a - b + m;
    result /= m;
  }
  return result;
}

double delta(std::size_t i, std::size_t j, std::size_t k) {
  check_range(i, j, k);
  long double ratio = 1.0L;
  for (std::size_t m = 0; m < j; ++m) {
    if (m >= i) return 1.0;  // C(i, j) = 0
    ratio *= static_cast<long double>(i - m) / static_cast<long double>(k - m);
  }
  return static_cast<double>(1.0L - ratio);
}

double delta_exact(std::size_t i, std::size_t j, std::size_t k) {
  check_range(i, j, k);
  using boost::multiprecision::cpp_rational;
  const cpp_rational ratio(binom(i, j), binom(k, j));
  return static_cast<double>(cpp_rational(1) - ratio);
}

DeltaTable::DeltaTable(std::size_t k) : k_(k) {
  if (k > kMaxTabulated) return;
  const std::size_t width = k + 1;
  table_.assign(width * width, 0.0);
  for (std::size_t i = 0; i <= k; ++i) {
    // ratio_j = C(i, j) / C(k, j), built up one factor at a time.
    long double ratio = 1.0L;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j > 0) {
        const std::size_t m = j - 1;
        ratio = m >= i ? 0.0L
                       : ratio * static_cast<long double>(i - m) / static_cast<long double>(k - m);
      }
      table_[i * width + j] = static_cast<double>(1.0L - ratio);
    }
  }
}

double DeltaTable::operator()(std::size_t i, std::size_t j) const {
  if (table_.empty()) return delta(i, j, k_);
  if (i > k_ || j > k_) check_range(i, j, k_);
  return table_[i * (k_ + 1) + j];
}

}  // namespace swarmlife
