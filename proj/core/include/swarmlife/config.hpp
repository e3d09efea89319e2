#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swarmlife {

enum class Scenario {
  Spreading,              // roots inject chunks into an empty swarm
  DistributedOptimistic,  // every present chunk is always obtainable
  RandomMatching,         // random server choice, one lucky customer each
};

std::string_view to_string(Scenario scenario) noexcept;
// Accepts the canonical names plus the short CLI spellings
// ("spreading", "optimistic", "matching").
Scenario parse_scenario(std::string_view name);

/// All parameters of one experiment.
struct ScenarioConfig {
  std::uint64_t peers = 100;   // n
  std::uint64_t chunks = 10;   // k
  std::uint64_t roots = 0;     // R, added on top of the n seeded peers
  double alpha = 0.0;          // per-round departure probability of peers
  // Per-round departure probability of roots and experts (nodes holding
  // all k chunks). Unset means "same as alpha".
  std::optional<double> alpha_expert;
  Scenario scenario = Scenario::RandomMatching;
  std::uint64_t max_rounds = 10000;
  std::uint64_t seed = 0;

  double expert_departure() const noexcept { return alpha_expert.value_or(alpha); }

  // Throws ConfigError when an invariant is violated.
  void validate() const;
};

enum class SeedingKind {
  EmptyPeersPlusRoots,  // n empty peers (roots come from ScenarioConfig::roots)
  Staircase,            // peer i holds a random subset of about (i-1)k/n chunks
  UniformOneChunk,      // every peer holds one chunk, ids assigned round-robin
  HalfEmptyHalfOne,     // first half of the peers hold one chunk round-robin
  ExplicitHistogram,    // histogram[c] peers hold c random chunks
};

std::string_view to_string(SeedingKind kind) noexcept;
SeedingKind parse_seeding(std::string_view name);

struct Seeding {
  SeedingKind kind = SeedingKind::EmptyPeersPlusRoots;
  std::vector<std::uint64_t> histogram;  // ExplicitHistogram only, k+1 bins

  static Seeding of(SeedingKind kind) { return Seeding{kind, {}}; }
  static Seeding from_histogram(std::vector<std::uint64_t> counts) {
    return Seeding{SeedingKind::ExplicitHistogram, std::move(counts)};
  }
};

// Default initial state for each scenario.
Seeding default_seeding(Scenario scenario) noexcept;

}  // namespace swarmlife
