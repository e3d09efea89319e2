#include "swarmlife/simulation.hpp"

#include <algorithm>
#include <string>

#include "swarmlife/errors.hpp"

namespace swarmlife::sim {

PeerState NetworkState::make_peer(bool root) {
  PeerState peer;
  peer.id = next_id++;
  peer.chunks = root ? ChunkSet::full(chunks) : ChunkSet(chunks);
  peer.is_root = root;
  return peer;
}

void NetworkState::replace(PeerState& node) {
  node.id = next_id++;
  node.chunks.clear();
  node.is_root = false;
  node.age = 0;
}

namespace {

void require_scenario(const NetworkState& state, const ScenarioConfig& cfg, Scenario expected) {
  if (cfg.scenario != expected || state.scenario != expected) {
    throw ConfigError("round function for scenario '" + std::string(to_string(expected)) +
                      "' called on a '" + std::string(to_string(cfg.scenario)) + "' network");
  }
}

}  // namespace

RoundStats run_spreading_round(NetworkState& state, const ScenarioConfig& cfg) {
  require_scenario(state, cfg, Scenario::Spreading);
  RoundStats stats;

  const std::size_t remaining = state.chunks - state.sent_chunks.size();
  if (remaining > 0 && !state.nodes.empty()) {
    auto& undispatched = state.scratch_ids;
    undispatched.clear();
    for (ChunkId id = 0; id < state.chunks; ++id) {
      if (!state.sent_chunks.contains(id)) undispatched.push_back(id);
    }
    // Independent draws over the pre-round pool: roots may collide.
    for (std::size_t r = 0; r < state.nodes.size(); ++r) {
      const ChunkId pick = undispatched[state.rng.below(undispatched.size())];
      if (state.sent_chunks.insert(pick)) ++stats.transfers;
    }
  }

  const double leave = cfg.expert_departure();
  auto& roots = state.nodes;
  std::size_t kept = 0;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (state.rng.bernoulli(leave)) {
      ++stats.departures;
      continue;
    }
    ++roots[r].age;
    if (kept != r) roots[kept] = std::move(roots[r]);
    ++kept;
  }
  roots.resize(kept);

  ++state.round;
  return stats;
}

RoundStats run_distributed_optimistic_round(NetworkState& state, const ScenarioConfig& cfg) {
  require_scenario(state, cfg, Scenario::DistributedOptimistic);
  RoundStats stats;

  ChunkSet present(state.chunks);
  for (const auto& node : state.nodes) present |= node.chunks;

  for (auto& node : state.nodes) {
    const std::size_t missing = state.chunks - node.chunks.size();
    if (missing == 0) continue;
    const ChunkId wanted = node.chunks.nth_absent(state.rng.below(missing));
    if (!present.contains(wanted)) continue;
    node.chunks.insert(wanted);
    ++stats.transfers;
    if (node.chunks.is_full() && !node.is_root) {
      ++stats.completions;
      ++state.downloads_completed;
    }
  }

  // Finished peers leave at once; only roots are subject to random churn.
  const double root_leave = cfg.expert_departure();
  for (auto& node : state.nodes) {
    const bool leaves = node.is_root ? state.rng.bernoulli(root_leave) : node.chunks.is_full();
    if (leaves) {
      ++stats.departures;
      state.replace(node);
    } else {
      ++node.age;
    }
  }

  ++state.round;
  return stats;
}

RoundStats run_matching_round(NetworkState& state, const ScenarioConfig& cfg) {
  require_scenario(state, cfg, Scenario::RandomMatching);
  auto& nodes = state.nodes;
  const std::size_t count = nodes.size();
  if (count < 2) throw ConfigError("random matching needs at least two nodes");
  RoundStats stats;

  auto& servers = state.scratch_servers;
  auto& customers = state.scratch_customer_counts;
  auto& lucky = state.scratch_lucky;
  auto& incoming = state.scratch_incoming;
  servers.resize(count);
  customers.assign(count, 0);
  lucky.assign(count, -1);
  incoming.assign(count, -1);

  // 1. every node asks a uniformly random other node
  for (std::size_t v = 0; v < count; ++v) {
    auto u = static_cast<std::uint32_t>(state.rng.below(count - 1));
    if (u >= v) ++u;
    servers[v] = u;
  }
  // 2. each server keeps one customer, uniform by reservoir sampling
  for (std::size_t v = 0; v < count; ++v) {
    const std::uint32_t s = servers[v];
    const std::uint32_t seen = ++customers[s];
    if (seen == 1 || state.rng.below(seen) == 0) lucky[s] = static_cast<std::int64_t>(v);
  }
  // 3. one useful chunk per lucky customer, decided on pre-round state
  for (std::size_t s = 0; s < count; ++s) {
    if (lucky[s] < 0) continue;
    ++stats.served;
    const auto c = static_cast<std::size_t>(lucky[s]);
    const std::size_t useful = nodes[s].chunks.count_difference(nodes[c].chunks);
    if (useful == 0) continue;
    const ChunkId pick = nodes[s].chunks.nth_of_difference(nodes[c].chunks, state.rng.below(useful));
    incoming[c] = pick;
  }
  for (std::size_t c = 0; c < count; ++c) {
    if (incoming[c] < 0) continue;
    auto& node = nodes[c];
    node.chunks.insert(static_cast<ChunkId>(incoming[c]));
    ++stats.transfers;
    if (node.chunks.is_full() && !node.is_root) {
      ++stats.completions;
      ++state.downloads_completed;
    }
  }
  // 4. churn
  const double peer_leave = cfg.alpha;
  const double expert_leave = cfg.expert_departure();
  for (auto& node : nodes) {
    if (state.rng.bernoulli(node.chunks.is_full() ? expert_leave : peer_leave)) {
      ++stats.departures;
      state.replace(node);
    } else {
      ++node.age;
    }
  }

  ++state.round;
  return stats;
}

RoundStats run_round(NetworkState& state, const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::Spreading: return run_spreading_round(state, cfg);
    case Scenario::DistributedOptimistic: return run_distributed_optimistic_round(state, cfg);
    case Scenario::RandomMatching: return run_matching_round(state, cfg);
  }
  throw ConfigError("unknown scenario");
}

AliveStatus check_network_alive(const NetworkState& state) {
  ChunkSet present = state.scenario == Scenario::Spreading ? state.sent_chunks
                                                           : ChunkSet(state.chunks);
  for (const auto& node : state.nodes) {
    if (present.is_full()) break;
    present |= node.chunks;
  }
  AliveStatus status;
  status.total = state.chunks;
  status.missing = state.chunks - present.size();
  status.alive = status.missing == 0;
  return status;
}

std::size_t staircase_size(Rng& rng, std::uint64_t index, std::uint64_t n, std::uint64_t k) {
  if (index < 1 || index > n) throw ConfigError("staircase index must lie in 1..n");
  const auto numerator = static_cast<unsigned __int128>(index - 1) * k;
  auto size = static_cast<std::size_t>(numerator / n);
  const auto remainder = static_cast<std::uint64_t>(numerator % n);
  if (remainder > 0 && rng.below(n) < remainder) ++size;
  return size;
}

NetworkState seed_network(const ScenarioConfig& cfg, const Seeding& seeding) {
  cfg.validate();
  const auto k = static_cast<std::size_t>(cfg.chunks);
  NetworkState state(cfg.scenario, k, cfg.seed);

  if (cfg.scenario == Scenario::Spreading) {
    if (seeding.kind != SeedingKind::EmptyPeersPlusRoots) {
      throw ConfigError("the spreading scenario only supports 'roots' seeding");
    }
    for (std::uint64_t r = 0; r < cfg.roots; ++r) state.nodes.push_back(state.make_peer(true));
    return state;
  }

  const std::uint64_t n = cfg.peers;
  state.nodes.reserve(n + cfg.roots);
  for (std::uint64_t i = 0; i < n; ++i) state.nodes.push_back(state.make_peer(false));

  switch (seeding.kind) {
    case SeedingKind::EmptyPeersPlusRoots:
      break;
    case SeedingKind::Staircase:
      for (std::uint64_t i = 1; i <= n; ++i) {
        const std::size_t size = staircase_size(state.rng, i, n, cfg.chunks);
        sample_subset(state.rng, k, size, state.nodes[i - 1].chunks, state.scratch_ids);
      }
      break;
    case SeedingKind::UniformOneChunk:
      for (std::uint64_t i = 0; i < n; ++i) {
        state.nodes[i].chunks.insert(static_cast<ChunkId>(i % k));
      }
      break;
    case SeedingKind::HalfEmptyHalfOne:
      for (std::uint64_t i = 0; i < n / 2; ++i) {
        state.nodes[i].chunks.insert(static_cast<ChunkId>(i % k));
      }
      break;
    case SeedingKind::ExplicitHistogram: {
      if (seeding.histogram.size() != k + 1) {
        throw ConfigError("histogram seeding needs k+1 = " + std::to_string(k + 1) +
                          " bins, got " + std::to_string(seeding.histogram.size()));
      }
      std::uint64_t total = 0;
      for (auto c : seeding.histogram) total += c;
      if (total != n) {
        throw ConfigError("histogram counts sum to " + std::to_string(total) +
                          " but peers = " + std::to_string(n));
      }
      std::size_t next = 0;
      for (std::size_t size = 0; size <= k; ++size) {
        for (std::uint64_t c = 0; c < seeding.histogram[size]; ++c) {
          sample_subset(state.rng, k, size, state.nodes[next++].chunks, state.scratch_ids);
        }
      }
      break;
    }
  }

  for (std::uint64_t r = 0; r < cfg.roots; ++r) state.nodes.push_back(state.make_peer(true));

  if (cfg.scenario == Scenario::RandomMatching && state.nodes.size() < 2) {
    throw ConfigError("random matching needs at least two nodes (peers + roots)");
  }
  return state;
}

std::vector<std::uint64_t> chunk_count_histogram(const NetworkState& state) {
  std::vector<std::uint64_t> bins(state.chunks + 1, 0);
  for (const auto& node : state.nodes) ++bins[node.chunks.size()];
  return bins;
}

namespace {

RoundSample sample(const NetworkState& state, const AliveStatus& status) {
  RoundSample s;
  s.round = state.round;
  s.present_chunks = status.present();
  s.nodes = state.nodes.size();
  for (const auto& node : state.nodes) s.full_nodes += node.chunks.is_full() ? 1 : 0;
  s.downloads_completed = state.downloads_completed;
  return s;
}

}  // namespace

TrialReport run_trial(const ScenarioConfig& cfg, const Seeding& seeding,
                      const TrialOptions& options) {
  NetworkState state = seed_network(cfg, seeding);
  TrialReport report;

  AliveStatus status = check_network_alive(state);
  if (options.record_history) report.presence_history.push_back(sample(state, status));

  const bool spreading = cfg.scenario == Scenario::Spreading;
  if (!spreading && !status.alive) {
    report.died = true;
  } else {
    while (state.round < cfg.max_rounds) {
      run_round(state, cfg);
      status = check_network_alive(state);
      if (options.record_history) report.presence_history.push_back(sample(state, status));
      if (spreading) {
        if (state.sent_chunks.is_full()) {
          report.spread_succeeded = true;
          break;
        }
        if (state.nodes.empty()) {
          report.died = true;
          break;
        }
      } else if (!status.alive) {
        report.died = true;
        break;
      }
    }
  }

  report.rounds_executed = state.round;
  report.survival_time = state.round;
  report.censored = !report.died && !report.spread_succeeded;
  report.downloads_completed = state.downloads_completed;
  report.final_histogram = chunk_count_histogram(state);
  return report;
}

}  // namespace swarmlife::sim
