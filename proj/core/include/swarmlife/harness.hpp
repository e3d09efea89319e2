#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "swarmlife/config.hpp"
#include "swarmlife/mean_field.hpp"
#include "swarmlife/simulation.hpp"
#include "swarmlife/statistics.hpp"
#include "swarmlife/types.hpp"

namespace swarmlife::harness {

using EventPredicate = std::function<bool(const sim::TrialReport&)>;

// Per-trial seed cfg.seed = derive_seed(master_seed, index).
std::vector<sim::TrialReport> run_trials(const ScenarioConfig& cfg, const Seeding& seeding,
                                         std::uint64_t trials, std::uint64_t master_seed,
                                         const sim::TrialOptions& options = {});

Estimate estimate_event(std::span<const sim::TrialReport> reports, const EventPredicate& event,
                        std::uint64_t master_seed);
Estimate estimate_event(const ScenarioConfig& cfg, const Seeding& seeding,
                        const EventPredicate& event, std::uint64_t trials,
                        std::uint64_t master_seed);

struct SurvivalSummary {
  std::uint64_t trials = 0;
  std::uint64_t died = 0;
  std::uint64_t censored = 0;
  std::optional<double> median;           // empty: median is censored (+inf)
  std::optional<Estimate> mean_uncensored;  // over trials that died
  std::uint64_t downloads_completed = 0;  // summed over trials

  double median_or_infinity() const;
};

SurvivalSummary summarize_survival(std::span<const sim::TrialReport> reports,
                                   std::uint64_t master_seed);

/// Monte Carlo of a static swarm snapshot.
struct MissingChunkOracle {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  Estimate any_missing;        // Pr[some chunk absent], Wilson interval
  Estimate per_chunk_absence;  // Pr[a given chunk absent], normal interval
  double analytic_per_chunk = 0.0;
};

inline constexpr std::uint64_t kStaircaseGuard = 1'000'000;          // n * k
inline constexpr std::uint64_t kBernoulliGuard = 20'000'000'000ULL;  // n * k * samples

// Peer i holds a random subset of staircase_size(i) chunks; analytic value n!/n^n.
MissingChunkOracle oracle_staircase_missing(std::uint64_t n, std::uint64_t k,
                                            std::uint64_t samples, std::uint64_t seed);

struct BernoulliOracle {
  MissingChunkOracle sampled;  // analytic_per_chunk = direct product n!/(n+1)^n
  double closed_form = 0.0;    // (n+1)!/(n+1)^n
  bool closed_form_mismatch = false;
  double closed_form_ratio = 0.0;  // closed_form / direct product = n + 1
};

// Peer i holds each chunk independently with probability i/(n+1).
BernoulliOracle oracle_bernoulli_missing(std::uint64_t n, std::uint64_t k,
                                         std::uint64_t samples, std::uint64_t seed);

enum class SweepAxis { Alpha, AlphaExpert };

std::string_view to_string(SweepAxis axis) noexcept;
SweepAxis parse_axis(std::string_view name);

struct SweepRow {
  double value = 0.0;
  Estimate event;  // spreading: Pr[spread succeeded]; otherwise Pr[alive at horizon]
  SurvivalSummary survival;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Alpha;
  std::vector<double> grid;
  std::vector<SweepRow> rows;
  ScenarioConfig config_template;
  Seeding seeding;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// from, from+step, ..., to (inclusive within half a step). Throws on an empty
// or non-monotone grid.
std::vector<double> linear_grid(double from, double to, double step);
void check_grid(std::span<const double> grid);

// Grid point seeds are derive_seed(seed, index).
SweepResult sweep(const ScenarioConfig& cfg_template, const Seeding& seeding, SweepAxis axis,
                  std::span<const double> grid, std::uint64_t trials, std::uint64_t seed);

// RandomMatching sweep over alpha; alpha-r follows alpha unless the template
// pins a larger value.
SweepResult survival_sweep(const ScenarioConfig& cfg_template, std::span<const double> alpha_grid,
                           std::uint64_t trials, std::uint64_t seed,
                           const Seeding& seeding = Seeding::of(SeedingKind::UniformOneChunk));

// Linear interpolation of where the event probability first falls through
// `level` along the grid.
std::optional<double> locate_crossing(const SweepResult& result, double level = 0.5);

struct CompareOptions {
  std::size_t chunks = 10;
  double alpha = 0.05;
  std::optional<double> alpha_expert;
  std::uint64_t peers = 2000;
  std::uint64_t rounds = 2000;            // measured rounds after burn-in
  std::optional<std::uint64_t> burn_in;   // defaults to 10 k
  std::uint64_t seed = 0;
  Seeding seeding = Seeding::of(SeedingKind::UniformOneChunk);
  std::optional<double> luck;             // defaults to 1 - 1/e
  std::size_t batches = 20;
  analytic::SolveOptions solve;

  std::uint64_t resolved_burn_in() const noexcept { return burn_in.value_or(10 * chunks); }
};

struct MeanFieldComparison {
  CompareOptions options;
  analytic::MeanFieldModel mean_field;
  DistributionVector simulated{std::vector<double>{1.0}};
  std::vector<double> per_state_delta;      // simulated - mean field
  std::vector<double> per_state_std_error;  // batch means over measured rounds
  double total_variation = 0.0;
  bool died = false;                  // network lost a chunk at some point
  bool died_before_burn_in = false;
  std::uint64_t death_round = 0;
};

/// Long RandomMatching run, time-averaged chunk-count histogram after the
/// burn-in, against steady_state_solve. The run continues past network
/// death: the histogram stays well defined.
MeanFieldComparison meanfield_vs_simulation(const CompareOptions& options);

}  // namespace swarmlife::harness
