#include "swarmlife/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmlife/errors.hpp"

namespace swarmlife::harness {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw ConfigError("wilson_interval: trials must be positive");
  if (successes > trials) throw ConfigError("wilson_interval: successes exceed trials");
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // guard the endpoints against rounding at p = 0 or 1
  out.low = std::min(out.low, p);
  out.high = std::max(out.high, p);
  return out;
}

Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
  const Interval ci = wilson_interval(successes, trials);
  Estimate e;
  e.trials = trials;
  e.seed = seed;
  e.mean = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  return e;
}

double MomentAccumulator::mean() const noexcept {
  if (count_ == 0) return 0.0;
  return static_cast<double>(sum_) / static_cast<double>(count_);
}

double MomentAccumulator::variance() const noexcept {
  if (count_ < 2) return 0.0;
  // n * sum_sq - sum^2 is exact in 128-bit arithmetic for the sizes used here
  const unsigned __int128 n = count_;
  const unsigned __int128 numerator = n * sum_sq_ - sum_ * sum_;
  return static_cast<double>(numerator) / (static_cast<double>(count_) *
                                           static_cast<double>(count_ - 1));
}

Estimate mean_estimate(const MomentAccumulator& acc, double scale, std::uint64_t seed) {
  if (acc.count() == 0) throw ConfigError("mean_estimate: no samples");
  Estimate e;
  e.trials = acc.count();
  e.seed = seed;
  e.mean = acc.mean() * scale;
  e.std_error = std::sqrt(acc.variance() / static_cast<double>(acc.count())) * std::abs(scale);
  e.ci_low = e.mean - kZ95 * e.std_error;
  e.ci_high = e.mean + kZ95 * e.std_error;
  return e;
}

double censored_median(std::vector<double> times) {
  if (times.empty()) throw ConfigError("censored_median: no samples");
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  if (times.size() % 2 == 1) return times[mid];
  if (std::isinf(times[mid])) return times[mid];
  return 0.5 * (times[mid - 1] + times[mid]);
}

double batch_means_std_error(std::span<const double> series, std::size_t batches) {
  if (batches < 2 || series.size() < batches) return 0.0;
  const std::size_t size = series.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < size; ++i) sum += series[b * size + i];
    means[b] = sum / static_cast<double>(size);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(batches);
  double ss = 0.0;
  for (double m : means) ss += (m - grand) * (m - grand);
  const double var = ss / static_cast<double>(batches - 1);
  return std::sqrt(var / static_cast<double>(batches));
}

}  // namespace swarmlife::harness
