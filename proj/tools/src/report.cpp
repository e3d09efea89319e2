#include "report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace swarmlife::cli {

#ifndef SWARMLIFE_VERSION
#define SWARMLIFE_VERSION "0.0.0"
#endif

std::string tool_version() { return SWARMLIFE_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

// JSON has no infinity; censored or undefined values become null.
Json finite_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

Json clamped(const analytic::ClampedValue& v) {
  return Json{{"value", finite_or_null(v.value)}, {"raw", finite_or_null(v.raw)}};
}

}  // namespace

Json to_json(const RunManifest& m) {
  return Json{{"tool_version", tool_version()},
              {"command", m.command},
              {"seed", m.seed},
              {"config", m.config},
              {"started", m.started},
              {"finished", m.finished}};
}

Json to_json(const harness::Estimate& e) {
  return Json{{"mean", finite_or_null(e.mean)},
              {"std_error", finite_or_null(e.std_error)},
              {"ci_low", finite_or_null(e.ci_low)},
              {"ci_high", finite_or_null(e.ci_high)},
              {"trials", e.trials},
              {"seed", e.seed}};
}

Json to_json(const harness::SurvivalSummary& s) {
  Json j{{"trials", s.trials},
         {"died", s.died},
         {"censored", s.censored},
         {"median", s.median ? Json(*s.median) : Json(nullptr)},
         {"median_censored", !s.median.has_value()},
         {"mean_uncensored", s.mean_uncensored ? to_json(*s.mean_uncensored) : Json(nullptr)},
         {"downloads_completed", s.downloads_completed}};
  return j;
}

Json to_json(const sim::TrialReport& r) {
  return Json{{"survival_time", r.survival_time},
              {"rounds_executed", r.rounds_executed},
              {"died", r.died},
              {"censored", r.censored},
              {"spread_succeeded", r.spread_succeeded},
              {"downloads_completed", r.downloads_completed},
              {"final_histogram", r.final_histogram}};
}

Json to_json(const analytic::BoundsReport& r) {
  return Json{{"n", r.n},
              {"k", r.k},
              {"exact_missing_one_chunk", r.exact_missing_one_chunk},
              {"union_bound", clamped(r.union_bound)},
              {"stirling_bound", clamped(r.stirling_bound)},
              {"stirling_bound_holds", r.stirling_bound_holds},
              {"bernoulli_y_exact", r.bernoulli_y_exact},
              {"bernoulli_y_direct", r.bernoulli_y_direct},
              {"z_alive_bound", clamped(r.z_alive_bound)},
              {"g_shortfall_bound", clamped(r.g_shortfall_bound)},
              {"q_bound", clamped(r.q_bound)},
              {"z_dead_lower", clamped(r.z_dead_lower)}};
}

Json to_json(const analytic::SurvivalScale& s) {
  return Json{{"epochs", finite_or_null(s.epochs)},
              {"rounds", finite_or_null(s.rounds)},
              {"immediate_death", s.immediate_death}};
}

Json to_json(const analytic::MeanFieldModel& m) {
  std::vector<double> p(m.p.values().begin(), m.p.values().end());
  return Json{{"chunks", m.params.chunks},
              {"alpha", m.params.alpha},
              {"alpha_r", m.params.expert_departure()},
              {"luck", m.params.luck},
              {"distribution", p},
              {"residual", finite_or_null(m.residual)},
              {"iterations", m.iterations},
              {"converged", m.converged}};
}

Json to_json(const harness::MeanFieldComparison& c) {
  std::vector<double> sim(c.simulated.values().begin(), c.simulated.values().end());
  return Json{{"mean_field", to_json(c.mean_field)},
              {"simulated", sim},
              {"per_state_delta", c.per_state_delta},
              {"per_state_std_error", c.per_state_std_error},
              {"total_variation", c.total_variation},
              {"died", c.died},
              {"died_before_burn_in", c.died_before_burn_in},
              {"death_round", c.death_round}};
}

Json to_json(const harness::MissingChunkOracle& o) {
  return Json{{"n", o.n},
              {"k", o.k},
              {"any_missing", to_json(o.any_missing)},
              {"per_chunk_absence", to_json(o.per_chunk_absence)},
              {"analytic_per_chunk", o.analytic_per_chunk}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const std::vector<sim::RoundSample>& history) {
  out << kTrajectoryColumns << '\n';
  for (const auto& s : history) {
    out << s.round << ',' << s.present_chunks << ',' << s.full_nodes << ',' << s.nodes << ','
        << s.downloads_completed << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const harness::SweepResult& result) {
  out << kSweepColumns << '\n';
  for (const auto& row : result.rows) {
    const auto& s = row.survival;
    out << format_double(row.value) << ',' << format_double(row.event.mean) << ','
        << format_double(row.event.std_error) << ',' << format_double(row.event.ci_low) << ','
        << format_double(row.event.ci_high) << ',' << row.event.trials << ',' << s.died << ','
        << s.censored << ',' << format_double(s.median_or_infinity()) << ',';
    // empty cells when no trial died
    if (s.mean_uncensored) {
      out << format_double(s.mean_uncensored->mean) << ','
          << format_double(s.mean_uncensored->std_error);
    } else {
      out << ',';
    }
    out << ',' << s.downloads_completed << '\n';
  }
}

void write_extinction_csv(std::ostream& out, const analytic::ExtinctionCurve& curve) {
  out << kExtinctionColumns << '\n';
  for (std::size_t t = 0; t < curve.extinction.size(); ++t) {
    out << t << ',' << format_double(curve.extinction[t]) << ',' << format_double(curve.survival[t])
        << ',' << format_double(static_cast<double>(t) * curve.survival[t]) << '\n';
  }
}

void write_spreading_csv(std::ostream& out, const analytic::SpreadingTrajectory& trajectory) {
  out << kSpreadingColumns << '\n';
  for (std::size_t t = 0; t < trajectory.rho.size(); ++t) {
    out << t << ',' << format_double(trajectory.expected_roots[t]) << ','
        << format_double(trajectory.expected_undispatched[t]) << ','
        << format_double(trajectory.rho[t]) << '\n';
  }
}

}  // namespace swarmlife::cli
