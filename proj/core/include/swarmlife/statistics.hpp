#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace swarmlife::harness {

inline constexpr double kZ95 = 1.959963984540054;

/// Point estimate with a 95% interval: Wilson for proportions, normal for
/// means.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);

/// Count, sum and sum of squares of non-negative integer samples, held
/// exactly. merge() is associative and commutative.
class MomentAccumulator {
 public:
  void add(std::uint64_t x) noexcept {
    ++count_;
    sum_ += x;
    sum_sq_ += static_cast<unsigned __int128>(x) * x;
  }
  void merge(const MomentAccumulator& other) noexcept {
    count_ += other.count_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
  }

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept;
  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const noexcept;

  friend bool operator==(const MomentAccumulator&, const MomentAccumulator&) = default;

 private:
  std::uint64_t count_ = 0;
  unsigned __int128 sum_ = 0;
  unsigned __int128 sum_sq_ = 0;
};

// Estimate of E[x] * scale with a normal interval.
Estimate mean_estimate(const MomentAccumulator& acc, double scale, std::uint64_t seed);

/// Median of time-to-event samples in which censored samples are +infinity.
/// Returns +infinity when the median itself is censored.
double censored_median(std::vector<double> times);

// Standard error of the mean of a correlated series from non-overlapping
// batch means.
double batch_means_std_error(std::span<const double> series, std::size_t batches);

}  // namespace swarmlife::harness
