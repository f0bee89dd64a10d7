#include "dvflow/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "dvflow/cli/output.hpp"
#include "dvflow/diagnostics.hpp"
#include "dvflow/serialize.hpp"
#include "dvflow/verify/suite.hpp"
#include "dvflow/verify/worker_pool.hpp"

namespace dvflow::cli {

using nlohmann::json;

namespace {

std::ostream& out_of(const CommandContext& ctx) { return *ctx.out; }
std::ostream& err_of(const CommandContext& ctx) { return *ctx.err; }

json optional_number(std::optional<double> v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

json term_json(const FourierTerm& t) {
  return json{{"k", t.k},
              {"amplitude", t.amplitude},
              {"phase", t.phase},
              {"envelope", to_string(t.envelope)},
              {"rate", t.rate}};
}

json terms_json(const std::vector<FourierTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back(term_json(t));
  return out;
}

json law_json(const ConstitutiveLaw& law) {
  return json{{"c_p", law.c_p},
              {"gamma", law.gamma},
              {"c_mu", law.c_mu},
              {"alpha", law.alpha},
              {"pi_reference", to_string(law.pi_reference)}};
}

json regime_json(const RegimeReport& report) {
  json hyps = json::object();
  for (const auto& c : report.checks) {
    hyps[to_string(c.theorem)] = json{{"applies", c.applies},
                                      {"reason", c.reason},
                                      {"forcing_requirement", c.forcing_requirement}};
  }
  return json{{"tags", report.tag_string()}, {"hypotheses", hyps}};
}

std::string snapshot_name(std::size_t index) {
  std::ostringstream os;
  os << "snapshot_" << std::setw(4) << std::setfill('0') << index << ".csv";
  return os.str();
}

bool wants(const RunConfig& c, OutputKind kind) {
  return std::find(c.outputs.begin(), c.outputs.end(), kind) != c.outputs.end();
}

}  // namespace

int exit_code_for(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return kExitCompleted;
    case RunStatus::vacuum_approach: return kExitVacuum;
    case RunStatus::nonfinite:
    case RunStatus::dt_underflow: return kExitNumerical;
  }
  return kExitNumerical;
}

json config_to_json(const RunConfig& c) {
  json model{{"preset", to_string(c.model.preset)}};
  switch (c.model.preset) {
    case PresetName::generic:
    case PresetName::navier_stokes:
      model["law"] = law_json(c.model.law);
      break;
    case PresetName::shallow_water:
      model["gravity"] = c.model.gravity;
      model["viscosity"] = c.model.viscosity;
      break;
    case PresetName::slender_jet:
      model["surface_tension"] = c.model.surface_tension;
      model["viscosity"] = c.model.viscosity;
      model["gravity"] = c.model.gravity;
      break;
  }
  const bool jet = c.model.preset == PresetName::slender_jet;
  const std::string q = jet ? "h" : "rho";
  json outputs = json::array();
  for (auto o : c.outputs) outputs.push_back(to_string(o));
  json sweep = json::object();
  if (c.sweep.gamma) sweep["gamma"] = *c.sweep.gamma;
  if (c.sweep.alpha) sweep["alpha"] = *c.sweep.alpha;
  if (c.sweep.c_p) sweep["c_p"] = *c.sweep.c_p;
  if (c.sweep.amplitude) sweep["amplitude"] = *c.sweep.amplitude;
  return json{
      {"model", model},
      {"grid", {{"n", c.n}, {"scheme", to_string(c.scheme)}}},
      {"initial",
       {{q + "_mean", c.initial.rho_mean},
        {q + "_terms", terms_json(c.initial.rho_terms)},
        {"u_mean", c.initial.u_mean},
        {"u_terms", terms_json(c.initial.u_terms)}}},
      {"forcing", {{"kind", to_string(c.forcing.kind)}, {"terms", terms_json(c.forcing.terms)}}},
      {"control",
       {{"end_time", c.control.end_time},
        {"cfl_adv", c.control.cfl_adv},
        {"cfl_diff", c.control.cfl_diff},
        {"dt_min", c.control.dt_min},
        {"dt_max", c.control.dt_max},
        {"vacuum_floor_fraction", c.control.vacuum_floor_fraction},
        {"cadence", c.cadence},
        {"snapshot_times", c.snapshot_times}}},
      {"output", {{"outputs", outputs}, {"plot_columns", c.plot_columns}}},
      {"run", {{"seed", c.seed}}},
      {"sweep", sweep},
      {"verify", {{"checks", c.verify_checks}}},
  };
}

int cmd_run(const RunConfig& config, const CommandContext& ctx) {
  ResolvedRun r = [&] {
    try {
      return resolve(config);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(ConfigErrorKind::invalid_value, "model", 0, e.what());
    }
  }();
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) {
    err_of(ctx) << "error: cannot create output directory '" << ctx.out_dir.string()
                << "': " << ec.message() << '\n';
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  try {
    outcome = run(r.initial, r.mapping.law, r.grid, r.forcing, r.control, r.options);
  } catch (const Error& e) {
    err_of(ctx) << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitNumerical;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int code = exit_code_for(outcome.status);

  const ScenarioInfo scenario =
      assess_scenario(r.initial, r.mapping.law, r.grid, r.forcing);
  const MaxPrincipleResult mp = max_principle_monitor(outcome.records, scenario);
  const DensityFloorResult floor = density_floor_monitor(outcome.records);
  const ChainCheck chain = thm14_chain_check(outcome.records, r.mapping.law, scenario);

  json files = json::object();
  if (wants(config, OutputKind::timeseries_csv)) {
    write_file(ctx.out_dir / "timeseries.csv", timeseries_csv(outcome.records));
    files["timeseries"] = "timeseries.csv";
  }
  if (wants(config, OutputKind::snapshots_csv)) {
    json snaps = json::array();
    for (std::size_t i = 0; i < outcome.snapshots.size(); ++i) {
      const auto& s = outcome.snapshots[i];
      const std::string name = snapshot_name(i);
      write_file(ctx.out_dir / name, snapshot_csv(s, r.mapping.law, r.grid));
      snaps.push_back(json{{"t", s.t}, {"file", name}});
    }
    files["snapshots"] = snaps;
  }
  if (wants(config, OutputKind::plots_svg)) {
    json plots = json::array();
    for (const auto& column : config.plot_columns) {
      PlotSeries series{column, "t", column, {}, {}};
      for (const auto& rec : outcome.records) {
        series.x.push_back(rec.t);
        series.y.push_back(timeseries_value(rec, column));
      }
      const std::string name = "plot_" + column + ".svg";
      write_file(ctx.out_dir / name, svg_line_plot(series));
      plots.push_back(name);
    }
    files["plots"] = plots;
  }

  if (wants(config, OutputKind::summary_json)) {
    json vacuum = nullptr;
    if (outcome.status == RunStatus::vacuum_approach && !outcome.records.empty()) {
      const auto& last = outcome.records.back();
      vacuum = json{{"t", last.t},
                    {"x", last.x_min_rho},
                    {"min_rho", last.min_rho},
                    {"floor", outcome.vacuum_floor}};
    }
    const auto& b = outcome.balances;
    json summary{
        {"status", to_string(outcome.status)},
        {"exit_code", code},
        {"message", outcome.message},
        {"steps", outcome.steps},
        {"final_time", outcome.final_state.t},
        {"vacuum", vacuum},
        {"config", config_to_json(config)},
        {"solver_law", law_json(r.mapping.law)},
        {"state_transform",
         r.mapping.transform == StateTransform::jet_square ? "rho=h^2" : "identity"},
        {"regime", regime_json(scenario.regime)},
        {"initial_condition",
         {{"ok", scenario.initial_condition.ok},
          {"slack", scenario.initial_condition.slack}}},
        {"max_principle",
         {{"applicable", mp.applicable},
          {"ok", mp.ok},
          {"worst", optional_number(mp.worst)},
          {"first_violation_t", optional_number(mp.first_violation_t)}}},
        {"density_floor",
         {{"applicable", floor.applicable},
          {"ok", floor.ok},
          {"worst_margin",
           optional_number(floor.applicable ? std::optional(floor.worst_margin)
                                            : std::nullopt)}}},
        {"long_time_chain",
         {{"applicable", chain.applicable},
          {"ok", chain.ok},
          {"exponent", chain.exponent},
          {"lhs", chain.lhs},
          {"middle", chain.middle},
          {"rhs", chain.rhs},
          {"time_average_sup_rho", chain.time_average}}},
        {"balances",
         {{"mass", b.mass},
          {"energy", b.energy},
          {"entropy", b.entropy},
          {"w_l2", b.w_l2},
          {"abs_mass", b.abs_mass},
          {"abs_energy", b.abs_energy},
          {"abs_entropy", b.abs_entropy},
          {"abs_w_l2", b.abs_w_l2}}},
        {"files", files},
        {"timing_file", "timing.json"},
    };
    write_file(ctx.out_dir / "summary.json", summary.dump(2) + "\n");
    write_file(ctx.out_dir / "timing.json",
               json{{"wall_seconds", seconds}, {"steps", outcome.steps}}.dump(2) + "\n");
  }

  out_of(ctx) << to_string(outcome.status) << ": " << outcome.steps << " steps to t = "
              << format_double(outcome.final_state.t);
  if (!outcome.message.empty()) out_of(ctx) << " (" << outcome.message << ")";
  out_of(ctx) << '\n';
  return code;
}

int cmd_verify(const RunConfig& config, const CommandContext& ctx) {
  verify::SuiteOptions options;
  options.seed = config.seed;
  options.jobs = ctx.jobs;
  options.only = config.verify_checks;
  const auto results = verify::run_suite(options);

  bool all = !results.empty();
  json checks = json::array();
  json timing = json::object();
  for (const auto& r : results) {
    all = all && r.passed;
    json metrics = json::object();
    for (const auto& m : r.metrics) metrics[m.name] = optional_number(m.value);
    checks.push_back(json{{"id", r.id},
                          {"name", r.name},
                          {"passed", r.passed},
                          {"detail", r.detail},
                          {"metrics", metrics}});
    timing[std::to_string(r.id)] = r.seconds;
  }
  const json verdict{{"passed", all}, {"seed", config.seed}, {"checks", checks}};
  out_of(ctx) << verdict.dump(2) << '\n';

  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (!ec) {
    write_file(ctx.out_dir / "verify.json", verdict.dump(2) + "\n");
    write_file(ctx.out_dir / "verify_timing.json", timing.dump(2) + "\n");
  }
  for (const auto& r : results) {
    if (!r.passed) err_of(ctx) << "check " << r.id << " (" << r.name << ") failed: " << r.detail << '\n';
  }
  return all ? kExitCompleted : kExitVerifyFailed;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, int jobs) {
  // The base law comes from the configured model, mapped to (c_p, gamma, c_mu, alpha).
  ModelPreset base;
  base.name = config.model.preset;
  base.law = config.model.law;
  base.gravity = config.model.gravity;
  base.viscosity = config.model.viscosity;
  base.surface_tension = config.model.surface_tension;
  const ConstitutiveLaw base_law = preset_to_law(base).law;
  const double base_amp =
      config.initial.rho_terms.empty() ? 0.0 : config.initial.rho_terms.front().amplitude;

  auto axis = [](const std::optional<std::vector<double>>& v, double fallback) {
    std::vector<double> out = v ? *v : std::vector<double>{fallback};
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto gammas = axis(config.sweep.gamma, base_law.gamma);
  const auto alphas = axis(config.sweep.alpha, base_law.alpha);
  const auto cps = axis(config.sweep.c_p, base_law.c_p);
  const auto amps = axis(config.sweep.amplitude, base_amp);

  std::vector<SweepRow> rows;
  for (double g : gammas)
    for (double a : alphas)
      for (double cp : cps)
        for (double amp : amps) {
          SweepRow row;
          row.gamma = g;
          row.alpha = a;
          row.c_p = cp;
          row.amplitude = amp;
          rows.push_back(row);
        }

  verify::parallel_for(rows.size(), jobs, [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      const auto law = ConstitutiveLaw::make(row.c_p, row.gamma, base_law.c_mu, row.alpha);
      row.regime = classify_regime(validate_law(law)).tag_string();
      RunConfig c = config;
      if (c.initial.rho_terms.empty()) {
        c.initial.rho_terms.push_back(FourierTerm{1, row.amplitude, 0.0, Envelope::constant, 0.0});
      } else {
        c.initial.rho_terms.front().amplitude = row.amplitude;
      }
      ResolvedRun r = resolve(c);
      r.options.track_balances = false;
      const RunOutcome out = run(r.initial, law, r.grid, r.forcing, r.control, r.options);
      const ScenarioInfo info = assess_scenario(r.initial, law, r.grid, r.forcing);
      const MaxPrincipleResult mp = max_principle_monitor(out.records, info);
      const DensityFloorResult floor = density_floor_monitor(out.records);
      row.status = to_string(out.status);
      row.steps = out.steps;
      row.final_t = out.final_state.t;
      row.max_w_worst = mp.worst;
      if (floor.applicable) row.min_floor_margin = floor.worst_margin;
      row.message = out.message;
    } catch (const std::exception& e) {
      row.status = "error";
      row.message = e.what();
    }
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "gamma,alpha,c_p,amplitude,regime,status,steps,final_t,min_floor_margin,"
      "max_w_worst,message\n";
  for (const auto& r : rows) {
    out += format_double(r.gamma) + ',' + format_double(r.alpha) + ',' +
           format_double(r.c_p) + ',' + format_double(r.amplitude) + ',' +
           csv_field(r.regime) + ',' + csv_field(r.status) + ',' +
           std::to_string(r.steps) + ',' + format_double(r.final_t) + ',' +
           (r.min_floor_margin ? format_double(*r.min_floor_margin) : "") + ',' +
           (r.status == "error" ? "" : format_double(r.max_w_worst)) + ',' +
           csv_field(r.message) + '\n';
  }
  return out;
}

int cmd_sweep(const RunConfig& config, const CommandContext& ctx) {
  const auto rows = run_sweep(config, ctx.jobs);
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) {
    err_of(ctx) << "error: cannot create output directory '" << ctx.out_dir.string()
                << "': " << ec.message() << '\n';
    return kExitConfig;
  }
  write_file(ctx.out_dir / "sweep.csv", sweep_csv(rows));
  out_of(ctx) << rows.size() << " sweep rows written to "
              << (ctx.out_dir / "sweep.csv").string() << '\n';
  return kExitCompleted;
}

int cmd_classify(const RunConfig& config, const CommandContext& ctx) {
  ModelPreset preset;
  preset.name = config.model.preset;
  preset.law = config.model.law;
  preset.gravity = config.model.gravity;
  preset.viscosity = config.model.viscosity;
  preset.surface_tension = config.model.surface_tension;
  const ConstitutiveLaw law = preset_to_law(preset).law;
  const RegimeReport report = classify_regime(law);
  auto& os = out_of(ctx);
  os << "law: c_p = " << format_double(law.c_p) << ", gamma = " << format_double(law.gamma)
     << ", c_mu = " << format_double(law.c_mu) << ", alpha = " << format_double(law.alpha)
     << '\n';
  for (const auto& c : report.checks) {
    os << std::left << std::setw(10) << to_string(c.theorem) << std::setw(6)
       << (c.applies ? "yes" : "no") << c.reason;
    if (c.applies && !c.forcing_requirement.empty()) {
      os << " [forcing: " << c.forcing_requirement << "]";
    }
    os << '\n';
  }
  os << "tags: " << report.tag_string() << '\n';
  return kExitCompleted;
}

}  // namespace dvflow::cli
