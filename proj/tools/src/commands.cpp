#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "report.hpp"
#include "settings.hpp"
#include "swarmlife/errors.hpp"

namespace swarmlife::cli {

namespace {

// One (sub)command: its CLI11 node and the string storage behind its flags.
struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> store;
  std::set<std::string> keys;
  std::string config_path;
  bool force = false;
};

void add_setting(Command& cmd, const std::string& name, const std::string& help) {
  cmd.keys.insert(name);
  cmd.app->add_option("--" + name, cmd.store[name], help);
}

Command& add_command(std::deque<Command>& all, CLI::App& parent, const std::string& name,
                     const std::string& help) {
  Command& cmd = all.emplace_back();
  cmd.app = parent.add_subcommand(name, help);
  cmd.app->add_option("--config", cmd.config_path,
                      "key = value file (or a run manifest or report); flags take precedence");
  cmd.app->add_flag("--force", cmd.force, "overwrite existing output files");
  return cmd;
}

Settings settings_for(const Command& cmd) {
  Settings settings(cmd.keys);
  if (!cmd.config_path.empty()) settings.load_file(cmd.config_path);
  for (const auto& key : cmd.keys) {
    if (cmd.app->get_option("--" + key)->count() > 0) settings.set(key, cmd.store.at(key));
  }
  return settings;
}

// Per-invocation output plumbing.
struct Context {
  std::ostream& out;
  bool force = false;
  RunManifest manifest;

  void refuse_existing(const std::string& path) const {
    if (!force && std::filesystem::exists(path)) {
      throw UsageError("refusing to overwrite '" + path + "' (pass --force)");
    }
  }

  void write_file(const std::string& path, const std::string& content) const {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << content;
    if (!file.flush()) throw std::runtime_error("failed writing '" + path + "'");
  }

  Json stamped_manifest() {
    manifest.finished = utc_timestamp();
    return to_json(manifest);
  }

  // JSON report with the manifest embedded, to --output or stdout.
  void emit_report(const Settings& s, Json body) {
    Json doc;
    doc["manifest"] = stamped_manifest();
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    if (s.has("output")) {
      write_file(s.raw("output"), dump(doc));
    } else {
      out << dump(doc);
    }
  }

  // CSV to `path` (or stdout when empty) plus a sidecar manifest for files.
  void emit_csv(const std::string& path, const std::string& csv, Json extra = Json::object()) {
    if (path.empty()) {
      out << csv;
      return;
    }
    write_file(path, csv);
    Json doc;
    doc["manifest"] = stamped_manifest();
    for (auto& [key, value] : extra.items()) doc[key] = std::move(value);
    write_file(path + ".manifest.json", dump(doc));
  }

  void reserve_csv(const std::string& path) const {
    if (path.empty()) return;
    refuse_existing(path);
    refuse_existing(path + ".manifest.json");
  }
};

// ---------------------------------------------------------------- scenarios

struct Resolved {
  ScenarioConfig cfg;
  Seeding seeding;
};

void add_scenario_settings(Command& cmd) {
  add_setting(cmd, "scenario", "spreading | optimistic | matching (required)");
  add_setting(cmd, "peers", "number of seeded peers n (default 100)");
  add_setting(cmd, "chunks", "chunks per file k (default 10)");
  add_setting(cmd, "roots", "roots R holding the whole file (default 0)");
  add_setting(cmd, "alpha", "per-round departure probability of peers (default 0)");
  add_setting(cmd, "alpha-r", "departure probability of roots / full nodes (default: alpha)");
  add_setting(cmd, "max-rounds", "round horizon (default 10000)");
  add_setting(cmd, "seed", "master seed (default 0)");
  add_setting(cmd, "seeding", "roots | staircase | uniform-one | half-one | histogram");
  add_setting(cmd, "histogram", "peers per chunk count 0..k, comma separated");
}

Resolved resolve_scenario(const Settings& s) {
  Resolved r;
  if (!s.has("scenario")) throw UsageError("missing required option --scenario");
  r.cfg.scenario = parse_scenario(s.raw("scenario"));
  r.cfg.peers = s.u64_or("peers", r.cfg.peers);
  r.cfg.chunks = s.u64_or("chunks", r.cfg.chunks);
  r.cfg.roots = s.u64_or("roots", r.cfg.roots);
  r.cfg.alpha = s.double_or("alpha", r.cfg.alpha);
  r.cfg.alpha_expert = s.real("alpha-r");
  r.cfg.max_rounds = s.u64_or("max-rounds", r.cfg.max_rounds);
  r.cfg.seed = s.u64_or("seed", r.cfg.seed);

  if (s.has("seeding")) {
    const SeedingKind kind = parse_seeding(s.raw("seeding"));
    if (kind == SeedingKind::ExplicitHistogram) {
      if (!s.has("histogram")) throw UsageError("--seeding histogram needs --histogram");
      r.seeding = Seeding::from_histogram(s.u64_list("histogram"));
    } else {
      if (s.has("histogram")) throw UsageError("--histogram only applies to --seeding histogram");
      r.seeding = Seeding::of(kind);
    }
  } else if (s.has("histogram")) {
    r.seeding = Seeding::from_histogram(s.u64_list("histogram"));
  } else {
    r.seeding = default_seeding(r.cfg.scenario);
  }
  r.cfg.validate();
  return r;
}

// `pin_alpha_r` materialises the alpha-r default; sweeps keep it symbolic
// because it follows the swept alpha.
Json scenario_json(const Resolved& r, bool pin_alpha_r) {
  Json j{{"scenario", std::string(to_string(r.cfg.scenario))},
         {"peers", r.cfg.peers},
         {"chunks", r.cfg.chunks},
         {"roots", r.cfg.roots},
         {"alpha", r.cfg.alpha}};
  if (pin_alpha_r) {
    j["alpha-r"] = r.cfg.expert_departure();
  } else {
    j["alpha-r"] = r.cfg.alpha_expert ? Json(*r.cfg.alpha_expert) : Json(nullptr);
  }
  j["max-rounds"] = r.cfg.max_rounds;
  j["seed"] = r.cfg.seed;
  j["seeding"] = std::string(to_string(r.seeding.kind));
  j["histogram"] = r.seeding.kind == SeedingKind::ExplicitHistogram ? Json(r.seeding.histogram)
                                                                    : Json(nullptr);
  return j;
}

std::string default_event(Scenario scenario) {
  return scenario == Scenario::Spreading ? "spread" : "alive";
}

harness::EventPredicate event_predicate(const std::string& name) {
  if (name == "spread") return [](const sim::TrialReport& r) { return r.spread_succeeded; };
  if (name == "alive") return [](const sim::TrialReport& r) { return !r.died; };
  if (name == "died") return [](const sim::TrialReport& r) { return r.died; };
  throw UsageError("unknown --event '" + name + "' (expected spread, alive or died)");
}

// ---------------------------------------------------------------- commands

int cmd_simulate(const Settings& s, Context& ctx) {
  const Resolved r = resolve_scenario(s);
  Json config = scenario_json(r, true);
  const bool estimate = s.has("trials");
  const std::string trajectory = s.string_or("trajectory", "");
  if (estimate && !trajectory.empty()) {
    throw UsageError("--trajectory records a single trial; drop --trials");
  }
  if (s.has("output")) ctx.refuse_existing(s.raw("output"));
  ctx.reserve_csv(trajectory);
  ctx.manifest.seed = r.cfg.seed;

  if (estimate) {
    const std::uint64_t trials = s.u64_or("trials", 1);
    const std::string event = s.string_or("event", default_event(r.cfg.scenario));
    const auto predicate = event_predicate(event);
    config["trials"] = trials;
    config["event"] = event;
    ctx.manifest.config = config;
    const auto reports = harness::run_trials(r.cfg, r.seeding, trials, r.cfg.seed);
    Json body{{"mode", "estimate"},
              {"event", event},
              {"estimate", to_json(harness::estimate_event(reports, predicate, r.cfg.seed))},
              {"survival", to_json(harness::summarize_survival(reports, r.cfg.seed))}};
    ctx.emit_report(s, std::move(body));
    return kExitOk;
  }

  if (s.has("event")) throw UsageError("--event needs --trials");
  ctx.manifest.config = config;
  sim::TrialOptions options;
  options.record_history = !trajectory.empty();
  const auto report = sim::run_trial(r.cfg, r.seeding, options);
  if (!trajectory.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, report.presence_history);
    ctx.emit_csv(trajectory, csv.str(), Json{{"columns", kTrajectoryColumns}});
  }
  ctx.emit_report(s, Json{{"mode", "trial"}, {"report", to_json(report)}});
  return kExitOk;
}

int cmd_sweep(const Settings& s, Context& ctx) {
  const Resolved r = resolve_scenario(s);
  const std::string axis_name =
      s.string_or("axis", r.cfg.scenario == Scenario::Spreading ? "alpha-r" : "alpha");
  const harness::SweepAxis axis = harness::parse_axis(axis_name);

  std::vector<double> grid;
  if (s.has("grid")) {
    if (s.has("from") || s.has("to") || s.has("step")) {
      throw UsageError("give either --grid or --from/--to/--step, not both");
    }
    grid = s.doubles("grid");
  } else if (s.has("from") || s.has("to") || s.has("step")) {
    if (!(s.has("from") && s.has("to") && s.has("step"))) {
      throw UsageError("--from, --to and --step must be given together");
    }
    grid = harness::linear_grid(*s.real("from"), *s.real("to"), *s.real("step"));
  }
  harness::check_grid(grid);

  const std::uint64_t trials = s.u64_or("trials", 100);
  const std::string output = s.string_or("output", "");
  ctx.reserve_csv(output);

  Json config = scenario_json(r, false);
  config["axis"] = std::string(harness::to_string(axis));
  config["grid"] = grid;
  config["trials"] = trials;
  ctx.manifest.config = config;
  ctx.manifest.seed = r.cfg.seed;

  const auto result = harness::sweep(r.cfg, r.seeding, axis, grid, trials, r.cfg.seed);
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  const auto crossing = harness::locate_crossing(result);
  ctx.emit_csv(output, csv.str(),
               Json{{"columns", kSweepColumns},
                    {"rows", result.rows.size()},
                    {"crossing_at_half", crossing ? Json(*crossing) : Json(nullptr)}});
  return kExitOk;
}

int cmd_compare(const Settings& s, Context& ctx) {
  harness::CompareOptions o;
  o.chunks = s.u64_or("chunks", o.chunks);
  o.alpha = s.double_or("alpha", o.alpha);
  o.alpha_expert = s.real("alpha-r");
  o.peers = s.u64_or("peers", o.peers);
  o.rounds = s.u64_or("rounds", o.rounds);
  o.burn_in = s.u64("burn-in");
  o.seed = s.u64_or("seed", o.seed);
  if (s.has("seeding")) {
    const SeedingKind kind = parse_seeding(s.raw("seeding"));
    if (kind == SeedingKind::ExplicitHistogram || kind == SeedingKind::EmptyPeersPlusRoots) {
      throw UsageError("compare supports staircase, uniform-one and half-one seeding");
    }
    o.seeding = Seeding::of(kind);
  }
  o.luck = s.real("luck");
  o.batches = s.u64_or("batches", o.batches);
  o.solve.tolerance = s.double_or("tolerance", o.solve.tolerance);
  o.solve.max_iterations = s.u64_or("max-iterations", o.solve.max_iterations);
  if (s.has("output")) ctx.refuse_existing(s.raw("output"));

  ctx.manifest.seed = o.seed;
  ctx.manifest.config = Json{{"chunks", o.chunks},
                             {"alpha", o.alpha},
                             {"alpha-r", o.alpha_expert.value_or(o.alpha)},
                             {"peers", o.peers},
                             {"rounds", o.rounds},
                             {"burn-in", o.resolved_burn_in()},
                             {"seed", o.seed},
                             {"seeding", std::string(to_string(o.seeding.kind))},
                             {"luck", o.luck.value_or(analytic::asymptotic_luck())},
                             {"batches", o.batches},
                             {"tolerance", o.solve.tolerance},
                             {"max-iterations", o.solve.max_iterations}};
  ctx.emit_report(s, to_json(harness::meanfield_vs_simulation(o)));
  return kExitOk;
}

std::uint64_t required_u64(const Settings& s, const std::string& key) {
  return parse_u64(s.raw(key), "--" + key);
}

int cmd_threshold(const Settings& s, Context& ctx) {
  const auto roots = required_u64(s, "roots");
  const auto chunks = required_u64(s, "chunks");
  if (s.has("output")) ctx.refuse_existing(s.raw("output"));
  const auto dr = static_cast<double>(roots);
  const auto dk = static_cast<double>(chunks);
  ctx.manifest.config = Json{{"roots", roots}, {"chunks", chunks}};
  ctx.emit_report(s, Json{{"roots", roots},
                          {"chunks", chunks},
                          {"rho0", dr / dk},
                          {"threshold", analytic::spreading_threshold(dr, dk)}});
  return kExitOk;
}

int cmd_spreading(const Settings& s, Context& ctx) {
  const auto roots = required_u64(s, "roots");
  const auto chunks = required_u64(s, "chunks");
  const double alpha_r = s.double_or("alpha-r", 0.0);
  const auto rounds = s.u64_or("rounds", 100);
  const std::string csv_path = s.string_or("csv", "");
  if (s.has("output")) ctx.refuse_existing(s.raw("output"));
  ctx.reserve_csv(csv_path);
  ctx.manifest.config =
      Json{{"roots", roots}, {"chunks", chunks}, {"alpha-r", alpha_r}, {"rounds", rounds}};

  const auto dr = static_cast<double>(roots);
  const auto dk = static_cast<double>(chunks);
  // stop once less than one chunk is expected to remain undispatched
  const auto traj = analytic::spreading_trajectory(dr, dk, alpha_r, rounds, 1.0);
  if (!csv_path.empty()) {
    std::ostringstream csv;
    write_spreading_csv(csv, traj);
    ctx.emit_csv(csv_path, csv.str(), Json{{"columns", kSpreadingColumns}});
  }
  const double fixed = analytic::rho_fixed_point(alpha_r);
  ctx.emit_report(s, Json{{"roots", roots},
                          {"chunks", chunks},
                          {"alpha_r", alpha_r},
                          {"rho0", dr / dk},
                          {"threshold", analytic::spreading_threshold(dr, dk)},
                          {"rho_fixed_point", std::isfinite(fixed) ? Json(fixed) : Json(nullptr)},
                          {"succeeds", analytic::spreading_succeeds(dr / dk, alpha_r)},
                          {"trajectory_points", traj.rho.size()},
                          {"final_expected_undispatched", traj.expected_undispatched.back()},
                          {"final_expected_roots", traj.expected_roots.back()}});
  return kExitOk;
}

int cmd_bounds(const Settings& s, Context& ctx) {
  const auto n = required_u64(s, "peers");
  const auto k = required_u64(s, "chunks");
  if (s.has("output")) ctx.refuse_existing(s.raw("output"));
  ctx.manifest.config = Json{{"peers", n}, {"chunks", k}};
  ctx.emit_report(s, Json{{"bounds", to_json(analytic::model_bounds(n, k))},
                          {"survival_scale", to_json(analytic::survival_time_scale(n, k))}});
  return kExitOk;
}

int cmd_gf(const Settings& s, Context& ctx) {
  const auto t_max = s.u64_or("t-max", 1000);
  const std::string output = s.string_or("output", "");
  ctx.reserve_csv(output);
  ctx.manifest.config = Json{{"t-max", t_max}};
  const auto curve = analytic::extinction_curve(t_max);
  std::ostringstream csv;
  write_extinction_csv(csv, curve);
  ctx.emit_csv(output, csv.str(), Json{{"columns", kExtinctionColumns}});
  return kExitOk;
}

int cmd_steady_state(const Settings& s, Context& ctx) {
  analytic::MeanFieldParams params;
  params.chunks = s.u64_or("chunks", 10);
  params.alpha = s.double_or("alpha", 0.05);
  params.alpha_expert = s.real("alpha-r");
  params.luck = s.double_or("luck", analytic::asymptotic_luck());
  analytic::SolveOptions options;
  options.tolerance = s.double_or("tolerance", options.tolerance);
  options.max_iterations = s.u64_or("max-iterations", options.max_iterations);
  options.damping = s.double_or("damping", options.damping);
  if (s.has("output")) ctx.refuse_existing(s.raw("output"));
  ctx.manifest.config = Json{{"chunks", params.chunks},
                             {"alpha", params.alpha},
                             {"alpha-r", params.expert_departure()},
                             {"luck", params.luck},
                             {"tolerance", options.tolerance},
                             {"max-iterations", options.max_iterations},
                             {"damping", options.damping}};
  ctx.emit_report(s, Json{{"steady_state", to_json(analytic::steady_state_solve(params, options))}});
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"swarmlife: churn and survivability experiments for chunked file swarms"};
  app.name("swarmlife");
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  std::deque<Command> commands;
  using Handler = int (*)(const Settings&, Context&);
  std::vector<std::pair<Command*, Handler>> handlers;

  Command& simulate = add_command(commands, app, "simulate", "run one trial, or estimate an event over --trials");
  add_scenario_settings(simulate);
  add_setting(simulate, "trials", "estimate mode: number of independent trials");
  add_setting(simulate, "event", "spread | alive | died (default: spread for spreading, else alive)");
  add_setting(simulate, "output", "write the JSON report here instead of stdout");
  add_setting(simulate, "trajectory", "per-round CSV trajectory of a single trial");
  handlers.emplace_back(&simulate, cmd_simulate);

  Command& sweep = add_command(commands, app, "sweep", "estimate survival or spreading success over a parameter grid");
  add_scenario_settings(sweep);
  add_setting(sweep, "axis", "alpha | alpha-r (default: alpha-r for spreading, else alpha)");
  add_setting(sweep, "from", "first grid value");
  add_setting(sweep, "to", "last grid value (inclusive)");
  add_setting(sweep, "step", "grid spacing");
  add_setting(sweep, "grid", "explicit comma separated grid");
  add_setting(sweep, "trials", "trials per grid point (default 100)");
  add_setting(sweep, "output", "CSV path; a .manifest.json sidecar is written next to it");
  handlers.emplace_back(&sweep, cmd_sweep);

  Command& compare = add_command(commands, app, "compare", "mean-field fixed point against a long random-matching run");
  for (const auto& [key, help] : std::vector<std::pair<std::string, std::string>>{
           {"chunks", "k (default 10)"},
           {"alpha", "peer departure probability (default 0.05)"},
           {"alpha-r", "departure probability of full nodes (default: alpha)"},
           {"peers", "population (default 2000)"},
           {"rounds", "measured rounds after burn-in (default 2000)"},
           {"burn-in", "discarded rounds (default 10 k)"},
           {"seed", "master seed (default 0)"},
           {"seeding", "staircase | uniform-one | half-one (default uniform-one)"},
           {"luck", "mean-field service probability (default 1 - 1/e)"},
           {"batches", "batches for the batch-means standard errors (default 20)"},
           {"tolerance", "solver tolerance (default 1e-12)"},
           {"max-iterations", "solver iteration cap (default 1000000)"},
           {"output", "write the JSON report here instead of stdout"}}) {
    add_setting(compare, key, help);
  }
  handlers.emplace_back(&compare, cmd_compare);

  CLI::App* analytic = app.add_subcommand("analytic", "closed-form models");
  analytic->require_subcommand(1);

  Command& threshold = add_command(commands, *analytic, "threshold", "largest root departure probability that still spreads");
  add_setting(threshold, "roots", "R (required)");
  add_setting(threshold, "chunks", "k (required)");
  add_setting(threshold, "output", "write the JSON report here instead of stdout");
  handlers.emplace_back(&threshold, cmd_threshold);

  Command& spreading = add_command(commands, *analytic, "spreading", "mean-field spreading recurrence");
  add_setting(spreading, "roots", "R (required)");
  add_setting(spreading, "chunks", "k (required)");
  add_setting(spreading, "alpha-r", "root departure probability (default 0)");
  add_setting(spreading, "rounds", "trajectory length cap (default 100)");
  add_setting(spreading, "csv", "write the trajectory CSV here");
  add_setting(spreading, "output", "write the JSON report here instead of stdout");
  handlers.emplace_back(&spreading, cmd_spreading);

  Command& bounds = add_command(commands, *analytic, "bounds", "missing-chunk bounds for the staircase and Bernoulli models");
  add_setting(bounds, "peers", "n (required)");
  add_setting(bounds, "chunks", "k (required)");
  add_setting(bounds, "output", "write the JSON report here instead of stdout");
  handlers.emplace_back(&bounds, cmd_bounds);

  Command& gf = add_command(commands, *analytic, "gf", "extinction curve of the critical chunk lineage");
  add_setting(gf, "t-max", "last generation (default 1000)");
  add_setting(gf, "output", "CSV path; a .manifest.json sidecar is written next to it");
  handlers.emplace_back(&gf, cmd_gf);

  Command& steady = add_command(commands, *analytic, "steady-state", "fixed point of the chunk-count mean-field chain");
  for (const auto& [key, help] : std::vector<std::pair<std::string, std::string>>{
           {"chunks", "k (default 10)"},
           {"alpha", "departure probability in states below k (default 0.05)"},
           {"alpha-r", "departure probability in state k (default: alpha)"},
           {"luck", "service probability (default 1 - 1/e)"},
           {"tolerance", "stop when max |T(P) - P| is below this (default 1e-12)"},
           {"max-iterations", "iteration cap (default 1000000)"},
           {"damping", "weight of the mapped iterate, in (0, 1] (default 0.5)"},
           {"output", "write the JSON report here instead of stdout"}}) {
    add_setting(steady, key, help);
  }
  handlers.emplace_back(&steady, cmd_steady_state);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto& [cmd, handler] : handlers) {
    if (!cmd->app->parsed()) continue;
    Context ctx{out, cmd->force, {}};
    ctx.manifest.command.push_back("swarmlife");
    ctx.manifest.command.insert(ctx.manifest.command.end(), args.begin(), args.end());
    ctx.manifest.started = utc_timestamp();
    try {
      return handler(settings_for(*cmd), ctx);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::invalid_argument& e) {  // ConfigError and friends
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return kExitInternal;
    }
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace swarmlife::cli
