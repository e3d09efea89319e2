#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmlife/bounds.hpp"
#include "swarmlife/branching.hpp"
#include "swarmlife/harness.hpp"
#include "swarmlife/mean_field.hpp"
#include "swarmlife/simulation.hpp"
#include "swarmlife/spreading_model.hpp"

namespace swarmlife::cli {

// Insertion-ordered so that emitted documents have a stable, documented layout.
using Json = nlohmann::ordered_json;

std::string tool_version();

struct RunManifest {
  Json config = Json::object();  // fully resolved parameters, keyed like the flags
  std::vector<std::string> command;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
};

// UTC, second resolution: 2026-01-31T12:00:00Z
std::string utc_timestamp();

Json to_json(const RunManifest& manifest);
Json to_json(const harness::Estimate& estimate);
Json to_json(const harness::SurvivalSummary& summary);
Json to_json(const sim::TrialReport& report);
Json to_json(const analytic::BoundsReport& report);
Json to_json(const analytic::SurvivalScale& scale);
Json to_json(const analytic::MeanFieldModel& model);
Json to_json(const harness::MeanFieldComparison& comparison);
Json to_json(const harness::MissingChunkOracle& oracle);

// Pretty-printed with a trailing newline.
std::string dump(const Json& doc);

// %.17g; non-finite values print as inf / -inf / nan.
std::string format_double(double value);

// Column orders are part of the output contract (see README).
inline constexpr const char* kTrajectoryColumns =
    "round,present_chunks,full_nodes,nodes,downloads_completed";
inline constexpr const char* kSweepColumns =
    "value,event_mean,event_std_error,event_ci_low,event_ci_high,trials,died,censored,"
    "median_survival,mean_survival_uncensored,mean_survival_std_error,downloads_completed";
inline constexpr const char* kExtinctionColumns = "t,extinction,survival,t_times_survival";
inline constexpr const char* kSpreadingColumns = "t,expected_roots,expected_undispatched,rho";

void write_trajectory_csv(std::ostream& out, const std::vector<sim::RoundSample>& history);
void write_sweep_csv(std::ostream& out, const harness::SweepResult& result);
void write_extinction_csv(std::ostream& out, const analytic::ExtinctionCurve& curve);
void write_spreading_csv(std::ostream& out, const analytic::SpreadingTrajectory& trajectory);

}  // namespace swarmlife::cli
