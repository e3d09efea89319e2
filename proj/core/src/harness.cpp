#include "swarmlife/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swarmlife/bounds.hpp"
#include "swarmlife/branching.hpp"
#include "swarmlife/errors.hpp"
#include "swarmlife/parallel.hpp"
#include "swarmlife/random.hpp"

namespace swarmlife::harness {

std::vector<sim::TrialReport> run_trials(const ScenarioConfig& cfg, const Seeding& seeding,
                                         std::uint64_t trials, std::uint64_t master_seed,
                                         const sim::TrialOptions& options) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  cfg.validate();
  std::vector<sim::TrialReport> reports(trials);
  parallel_for(trials, [&](std::size_t i) {
    ScenarioConfig trial_cfg = cfg;
    trial_cfg.seed = derive_seed(master_seed, i);
    reports[i] = sim::run_trial(trial_cfg, seeding, options);
  });
  return reports;
}

Estimate estimate_event(std::span<const sim::TrialReport> reports, const EventPredicate& event,
                        std::uint64_t master_seed) {
  std::uint64_t hits = 0;
  for (const auto& r : reports) hits += event(r) ? 1 : 0;
  return proportion_estimate(hits, reports.size(), master_seed);
}

Estimate estimate_event(const ScenarioConfig& cfg, const Seeding& seeding,
                        const EventPredicate& event, std::uint64_t trials,
                        std::uint64_t master_seed) {
  const auto reports = run_trials(cfg, seeding, trials, master_seed);
  return estimate_event(reports, event, master_seed);
}

double SurvivalSummary::median_or_infinity() const {
  return median.value_or(std::numeric_limits<double>::infinity());
}

SurvivalSummary summarize_survival(std::span<const sim::TrialReport> reports,
                                   std::uint64_t master_seed) {
  if (reports.empty()) throw ConfigError("summarize_survival: no reports");
  SurvivalSummary summary;
  summary.trials = reports.size();
  std::vector<double> times;
  MomentAccumulator died_times;
  for (const auto& r : reports) {
    // Only deaths are observed events; anything else is right-censored.
    summary.downloads_completed += r.downloads_completed;
    if (r.died) {
      ++summary.died;
      died_times.add(r.survival_time);
      times.push_back(static_cast<double>(r.survival_time));
    } else {
      ++summary.censored;
      times.push_back(std::numeric_limits<double>::infinity());
    }
  }
  const double median = censored_median(std::move(times));
  if (std::isfinite(median)) summary.median = median;
  if (died_times.count() > 0) summary.mean_uncensored = mean_estimate(died_times, 1.0, master_seed);
  return summary;
}

namespace {

constexpr std::uint64_t kBlockSize = 4096;

struct SnapshotCounts {
  std::uint64_t any_missing = 0;
  MomentAccumulator absent;

  void merge(const SnapshotCounts& other) {
    any_missing += other.any_missing;
    absent.merge(other.absent);
  }
};

// Samples in fixed-size blocks with one RNG stream per block, so results do
// not depend on the worker count.
template <typename SampleFn>
SnapshotCounts sample_blocks(std::uint64_t samples, std::uint64_t seed, SampleFn&& sample_absent) {
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<SnapshotCounts> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min(samples, begin + kBlockSize);
    SnapshotCounts counts;
    for (std::uint64_t s = begin; s < end; ++s) {
      const std::uint64_t absent = sample_absent(rng);
      counts.absent.add(absent);
      counts.any_missing += absent > 0 ? 1 : 0;
    }
    partial[b] = counts;
  });
  SnapshotCounts total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

MissingChunkOracle finish(std::uint64_t n, std::uint64_t k, std::uint64_t samples,
                          std::uint64_t seed, const SnapshotCounts& counts) {
  MissingChunkOracle out;
  out.n = n;
  out.k = k;
  out.any_missing = proportion_estimate(counts.any_missing, samples, seed);
  out.per_chunk_absence = mean_estimate(counts.absent, 1.0 / static_cast<double>(k), seed);
  return out;
}

}  // namespace

MissingChunkOracle oracle_staircase_missing(std::uint64_t n, std::uint64_t k,
                                            std::uint64_t samples, std::uint64_t seed) {
  if (n < 1 || k < 1 || samples < 1) throw ConfigError("oracle needs n, k, samples >= 1");
  if (n * k > kStaircaseGuard) {
    throw ConfigError("refusing staircase oracle: n*k = " + std::to_string(n * k) +
                      " exceeds the direct-sampling guard of " + std::to_string(kStaircaseGuard));
  }
  const auto capacity = static_cast<std::size_t>(k);
  const SnapshotCounts counts = sample_blocks(samples, seed, [&](Rng& rng) {
    thread_local std::vector<ChunkId> scratch;
    ChunkSet present(capacity);
    ChunkSet peer(capacity);
    for (std::uint64_t i = 1; i <= n; ++i) {
      sample_subset(rng, capacity, sim::staircase_size(rng, i, n, k), peer, scratch);
      present |= peer;
    }
    return static_cast<std::uint64_t>(capacity - present.size());
  });
  MissingChunkOracle out = finish(n, k, samples, seed, counts);
  out.analytic_per_chunk = std::exp(analytic::log_staircase_absence(n));
  return out;
}

BernoulliOracle oracle_bernoulli_missing(std::uint64_t n, std::uint64_t k, std::uint64_t samples,
                                         std::uint64_t seed) {
  if (n < 1 || k < 1 || samples < 1) throw ConfigError("oracle needs n, k, samples >= 1");
  const long double work = static_cast<long double>(n) * k * samples;
  if (work > static_cast<long double>(kBernoulliGuard)) {
    throw ConfigError("refusing Bernoulli oracle: n*k*samples exceeds the budget of " +
                      std::to_string(kBernoulliGuard) + " draws");
  }
  const SnapshotCounts counts = sample_blocks(samples, seed, [&](Rng& rng) {
    std::uint64_t absent = 0;
    for (std::uint64_t j = 0; j < k; ++j) {
      bool held = false;
      for (std::uint64_t i = 1; i <= n; ++i) {
        // Pr = i/(n+1) exactly, with integer draws
        if (rng.below(n + 1) < i) held = true;
      }
      absent += held ? 0 : 1;
    }
    return absent;
  });
  BernoulliOracle out;
  out.sampled = finish(n, k, samples, seed, counts);
  out.sampled.analytic_per_chunk = std::exp(analytic::log_bernoulli_direct(n));
  out.closed_form = std::exp(analytic::log_bernoulli_closed_form(n));
  out.closed_form_ratio = out.closed_form / out.sampled.analytic_per_chunk;
  out.closed_form_mismatch =
      std::abs(out.closed_form - out.sampled.analytic_per_chunk) >
      1e-12 * std::max(out.closed_form, out.sampled.analytic_per_chunk);
  return out;
}

std::string_view to_string(SweepAxis axis) noexcept {
  return axis == SweepAxis::Alpha ? "alpha" : "alpha-r";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "alpha") return SweepAxis::Alpha;
  if (name == "alpha-r" || name == "alpha_r" || name == "alpha-R") return SweepAxis::AlphaExpert;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected alpha or alpha-r)");
}

std::vector<double> linear_grid(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("grid step must be positive");
  if (!(to >= from)) throw ConfigError("empty grid: 'to' is below 'from'");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 0.5)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(from + static_cast<double>(i) * step);
  return grid;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly increasing");
  }
}

namespace {

bool alive_at_horizon(const sim::TrialReport& r) { return !r.died; }
bool spread_ok(const sim::TrialReport& r) { return r.spread_succeeded; }

}  // namespace

SweepResult sweep(const ScenarioConfig& cfg_template, const Seeding& seeding, SweepAxis axis,
                  std::span<const double> grid, std::uint64_t trials, std::uint64_t seed) {
  check_grid(grid);
  SweepResult result;
  result.axis = axis;
  result.grid.assign(grid.begin(), grid.end());
  result.config_template = cfg_template;
  result.seeding = seeding;
  result.trials = trials;
  result.seed = seed;

  const EventPredicate event =
      cfg_template.scenario == Scenario::Spreading ? EventPredicate(spread_ok)
                                                   : EventPredicate(alive_at_horizon);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    ScenarioConfig cfg = cfg_template;
    if (axis == SweepAxis::Alpha) {
      cfg.alpha = grid[g];
      if (cfg.alpha_expert && *cfg.alpha_expert < cfg.alpha) cfg.alpha_expert.reset();
    } else {
      cfg.alpha_expert = grid[g];
    }
    const std::uint64_t point_seed = derive_seed(seed, g);
    const auto reports = run_trials(cfg, seeding, trials, point_seed);
    result.rows.push_back(
        SweepRow{grid[g], estimate_event(reports, event, point_seed), summarize_survival(reports, point_seed)});
  }
  return result;
}

SweepResult survival_sweep(const ScenarioConfig& cfg_template, std::span<const double> alpha_grid,
                           std::uint64_t trials, std::uint64_t seed, const Seeding& seeding) {
  ScenarioConfig cfg = cfg_template;
  cfg.scenario = Scenario::RandomMatching;
  return sweep(cfg, seeding, SweepAxis::Alpha, alpha_grid, trials, seed);
}

std::optional<double> locate_crossing(const SweepResult& result, double level) {
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const double a = result.rows[i - 1].event.mean;
    const double b = result.rows[i].event.mean;
    if (a >= level && b < level) {
      const double x0 = result.rows[i - 1].value;
      const double x1 = result.rows[i].value;
      return x0 + (a - level) / (a - b) * (x1 - x0);
    }
  }
  return std::nullopt;
}

MeanFieldComparison meanfield_vs_simulation(const CompareOptions& options) {
  if (options.peers < 2) throw ConfigError("compare needs at least two peers");
  if (options.rounds < 1) throw ConfigError("compare needs at least one measured round");
  MeanFieldComparison out;
  out.options = options;

  analytic::MeanFieldParams params;
  params.chunks = options.chunks;
  params.alpha = options.alpha;
  params.alpha_expert = options.alpha_expert;
  params.luck = options.luck.value_or(analytic::asymptotic_luck());
  out.mean_field = analytic::steady_state_solve(params, options.solve);

  ScenarioConfig cfg;
  cfg.scenario = Scenario::RandomMatching;
  cfg.peers = options.peers;
  cfg.chunks = options.chunks;
  cfg.alpha = options.alpha;
  cfg.alpha_expert = options.alpha_expert;
  cfg.seed = options.seed;
  const std::uint64_t burn_in = options.resolved_burn_in();
  cfg.max_rounds = burn_in + options.rounds;
  cfg.validate();

  sim::NetworkState state = sim::seed_network(cfg, options.seeding);
  const std::size_t states = options.chunks + 1;
  std::vector<std::uint64_t> totals(states, 0);
  std::vector<std::vector<double>> series(states);
  for (auto& s : series) s.reserve(options.rounds);
  const double population = static_cast<double>(state.nodes.size());

  if (!sim::check_network_alive(state).alive) {
    out.died = true;
    out.died_before_burn_in = true;
  }
  while (state.round < cfg.max_rounds) {
    sim::run_matching_round(state, cfg);
    if (!out.died && !sim::check_network_alive(state).alive) {
      out.died = true;
      out.death_round = state.round;
      out.died_before_burn_in = state.round <= burn_in;
    }
    if (state.round <= burn_in) continue;
    const auto hist = sim::chunk_count_histogram(state);
    for (std::size_t i = 0; i < states; ++i) {
      totals[i] += hist[i];
      series[i].push_back(static_cast<double>(hist[i]) / population);
    }
  }

  out.simulated = DistributionVector::from_counts(totals);
  out.total_variation = total_variation(out.simulated, out.mean_field.p);
  out.per_state_delta.resize(states);
  out.per_state_std_error.resize(states);
  for (std::size_t i = 0; i < states; ++i) {
    out.per_state_delta[i] = out.simulated[i] - out.mean_field.p[i];
    out.per_state_std_error[i] = batch_means_std_error(series[i], options.batches);
  }
  return out;
}

}  // namespace swarmlife::harness
