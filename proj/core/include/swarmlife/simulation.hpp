#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarmlife/chunk_set.hpp"
#include "swarmlife/config.hpp"
#include "swarmlife/random.hpp"
#include "swarmlife/types.hpp"

namespace swarmlife::sim {

/// Synchronous state of one trial.
///
/// In the spreading scenario `nodes` holds only the live roots and
/// `sent_chunks` the chunks already dispatched into the swarm; in the closed
/// scenarios `nodes` has constant length (n peers plus the initial roots).
struct NetworkState {
  Scenario scenario = Scenario::RandomMatching;
  std::size_t chunks = 0;  // k
  std::vector<PeerState> nodes;
  std::uint64_t round = 0;
  ChunkSet sent_chunks;
  std::uint64_t downloads_completed = 0;
  NodeId next_id = 0;
  Rng rng{0};

  // Per-round scratch buffers, kept to avoid reallocation.
  std::vector<std::uint32_t> scratch_servers;
  std::vector<std::uint32_t> scratch_customer_counts;
  std::vector<std::int64_t> scratch_lucky;
  std::vector<std::int64_t> scratch_incoming;
  std::vector<ChunkId> scratch_ids;

  NetworkState() = default;
  NetworkState(Scenario kind, std::size_t k, std::uint64_t seed)
      : scenario(kind), chunks(k), sent_chunks(k), rng(seed) {}

  PeerState make_peer(bool root);
  void replace(PeerState& node);
};

/// What happened during one round. Counts are per round.
struct RoundStats {
  std::uint64_t transfers = 0;        // chunks moved or dispatched
  std::uint64_t served = 0;           // customers that received service (matching)
  std::uint64_t departures = 0;
  std::uint64_t completions = 0;      // peers that reached k chunks this round
};

struct AliveStatus {
  bool alive = false;
  std::size_t missing = 0;
  std::size_t total = 0;

  std::size_t present() const noexcept { return total - missing; }
};

/// One round of each protocol. Phases: transfers (against the pre-round
/// state), churn, round increment.
RoundStats run_spreading_round(NetworkState& state, const ScenarioConfig& cfg);
RoundStats run_distributed_optimistic_round(NetworkState& state, const ScenarioConfig& cfg);
RoundStats run_matching_round(NetworkState& state, const ScenarioConfig& cfg);
RoundStats run_round(NetworkState& state, const ScenarioConfig& cfg);

/// True iff the union of all chunk sets (plus dispatched chunks in the
/// spreading scenario) covers {0..k-1}.
AliveStatus check_network_alive(const NetworkState& state);

/// Builds the initial network for `cfg` seeded by `seeding`. The trial RNG
/// stream is seeded with cfg.seed and also drives the seeding draws.
NetworkState seed_network(const ScenarioConfig& cfg, const Seeding& seeding);

// Number of chunks peer `index` (1-based) receives under staircase seeding:
// (i-1)k/n rounded down, rounded up with probability equal to the fractional
// part, so each chunk is held with probability exactly (i-1)/n.
std::size_t staircase_size(Rng& rng, std::uint64_t index, std::uint64_t n, std::uint64_t k);

struct RoundSample {
  std::uint64_t round = 0;
  std::uint64_t present_chunks = 0;
  std::uint64_t full_nodes = 0;
  std::uint64_t nodes = 0;
  std::uint64_t downloads_completed = 0;  // cumulative

  friend bool operator==(const RoundSample&, const RoundSample&) = default;
};

struct TrialReport {
  std::uint64_t survival_time = 0;  // death round, else rounds executed
  std::uint64_t rounds_executed = 0;
  bool died = false;
  bool censored = false;  // reached max_rounds with the network alive
  bool spread_succeeded = false;
  std::uint64_t downloads_completed = 0;
  std::vector<RoundSample> presence_history;  // filled when requested
  std::vector<std::uint64_t> final_histogram;  // k+1 bins by chunk count

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

struct TrialOptions {
  bool record_history = false;
};

/// Runs rounds until the network dies, spreading completes or fails, or
/// max_rounds is reached. Identical inputs give identical reports.
TrialReport run_trial(const ScenarioConfig& cfg, const Seeding& seeding,
                      const TrialOptions& options = {});

std::vector<std::uint64_t> chunk_count_histogram(const NetworkState& state);

}  // namespace swarmlife::sim

