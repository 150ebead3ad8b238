#include "dampeuler/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dampeuler/error.hpp"
#include "dampeuler/report.hpp"

namespace dampeuler {

namespace {

using json = nlohmann::ordered_json;

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json config_echo(const RunConfig& cfg) {
  const auto profile_name = [](const Profile& p) -> std::string {
    switch (p.kind) {
      case ProfileKind::Zero: return "zero";
      case ProfileKind::Bump: return "bump";
      case ProfileKind::BumpDerivative: return "bump_derivative";
      case ProfileKind::Table: return "table";
    }
    return "?";
  };
  json j;
  j["law"] = {{"kind", std::string(to_string(cfg.law.kind()))},
              {"A", cfg.law.exponent()},
              {"gamma", cfg.law.gamma()},
              {"K1", cfg.law.k1()},
              {"K", cfg.law.offset()}};
  j["damping"] = {{"mu", cfg.damping.mu}, {"lambda", cfg.damping.lambda}};
  j["initial"] = {{"epsilon", cfg.initial.epsilon},
                  {"radius", cfg.initial.radius},
                  {"rho_profile", profile_name(cfg.initial.rho_profile)},
                  {"u_profile", profile_name(cfg.initial.u_profile)}};
  j["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}, {"n", cfg.grid.n}};
  j["solver"] = {{"cfl", cfg.solver.cfl},
                 {"t_end", cfg.solver.t_end},
                 {"snapshot_stride", cfg.solver.snapshot_stride},
                 {"limiter", std::string(to_string(cfg.solver.limiter))},
                 {"formulation", std::string(to_string(cfg.formulation))},
                 {"dt", cfg.solver.fixed_dt ? json(*cfg.solver.fixed_dt) : json(nullptr)},
                 {"dissipation", cfg.solver.dissipation}};
  j["diagnostics"] = {{"m", cfg.diagnostics.m},
                      {"gradient_threshold", cfg.diagnostics.thresholds.gradient},
                      {"vacuum_threshold", cfg.diagnostics.thresholds.vacuum_density},
                      {"support_tol", cfg.diagnostics.support_tol}};
  j["output"] = {{"directory", cfg.output.directory.string()},
                 {"csv", cfg.output.csv},
                 {"svg", cfg.output.svg}};
  return j;
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::ValidationError, "sweep " + key + ": not a number '" + text + "'");
  }
  return x;
}

// "kind" or "kind:gamma".
PressureLaw sweep_law(const PressureLaw& base, const std::string& spec) {
  const auto colon = spec.find(':');
  const LawKind kind = parse_law_kind(spec.substr(0, colon));
  std::optional<double> gamma;
  std::optional<double> exponent;
  if (colon != std::string::npos) {
    gamma = parse_number("law", spec.substr(colon + 1));
  } else if (kind == base.kind()) {
    exponent = base.exponent();
  }
  return make_law(kind, exponent, gamma, base.k1(), base.offset());
}

RunConfig sweep_point(const RunConfig& base, const std::vector<SweepAxis>& axes,
                      const std::vector<std::size_t>& pick) {
  RunConfig cfg = base;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::string& key = axes[a].key;
    const std::string& value = axes[a].values[pick[a]];
    if (key == "mu") cfg.damping.mu = parse_number(key, value);
    else if (key == "lambda") cfg.damping.lambda = parse_number(key, value);
    else if (key == "epsilon") cfg.initial.epsilon = parse_number(key, value);
    else if (key == "law") cfg.law = sweep_law(base.law, value);
  }
  validate(cfg);
  return cfg;
}

}  // namespace

int exit_code(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::CompletedGlobal: return kExitGlobal;
    case RunStatus::BlowupDetected: return kExitBlowup;
    case RunStatus::Error: return kExitError;
  }
  return kExitError;
}

RunReport execute(const RunConfig& cfg) {
  RunReport report;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Grid1D grid = cfg.grid.build();
    const TransformParams tp(cfg.law);
    const InitialStates initial = make_initial(cfg.initial, grid, tp);
    Monitor monitor(tp, cfg.damping,
                    {cfg.diagnostics.m, cfg.initial.radius, cfg.diagnostics.support_tol,
                     Nonlinearity::Full});
    const RunSetup setup{tp, cfg.damping, Nonlinearity::Full, cfg.diagnostics.thresholds};
    const RunResult result = run(cfg.solver, cfg.formulation, setup, initial, monitor.observer());
    report.status = result.status;
    report.blowup = result.blowup;
    report.error = result.error;
    report.steps = result.steps;
    report.final_time = result.final_state.t;
    report.energy = monitor.energy();
    report.rows = monitor.rows();
    report.fps_margin = monitor.fps_margin();
    report.energy_monotone = monitor.energy_monotone();
  } catch (const std::exception& e) {
    report.status = RunStatus::Error;
    report.error = e.what();
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string summary_json(const RunConfig& cfg, const RunReport& report) {
  json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["csv_schema_version"] = kRunCsvSchemaVersion;
  j["status"] = std::string(to_string(report.status));
  j["exit_code"] = exit_code(report.status);
  j["blowup"] = {{"detected", report.blowup.detected()},
                 {"kind", std::string(to_string(report.blowup.kind))},
                 {"time", report.blowup.detected() ? json(report.blowup.t) : json(nullptr)},
                 {"location", report.blowup.detected() ? json(report.blowup.location)
                                                       : json(nullptr)}};
  j["error"] = report.error.empty() ? json(nullptr) : json(report.error);
  j["steps"] = report.steps;
  j["final_time"] = report.final_time;
  json energy;
  energy["m"] = report.energy.m();
  if (!report.energy.empty()) {
    const EnergySample& last = report.energy.last();
    energy["E_m_initial"] = report.energy.samples().front().energy;
    energy["E_m_final"] = number_or_null(last.energy);
    energy["L_m_final"] = number_or_null(last.dissipation);
    energy["ratio_final"] = number_or_null(last.ratio);
  }
  energy["ratio_sup"] = number_or_null(report.energy.sup_ratio());
  energy["monotone"] = report.energy_monotone;
  j["energy"] = energy;
  j["fps_margin"] = number_or_null(report.fps_margin);
  j["snapshots"] = report.rows.size();
  j["wall_seconds"] = report.wall_seconds;
  j["notices"] = cfg.notices;
  j["config"] = config_echo(cfg);
  return j.dump(2) + "\n";
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    cfg.output.directory = dir;
  }
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  for (const std::string& n : cfg.notices) log << n << '\n';
  const RunReport report = execute(cfg);
  try {
    std::filesystem::create_directories(cfg.output.directory);
    const auto& dir = cfg.output.directory;
    if (cfg.output.csv) {
      std::ostringstream csv;
      write_run_csv(csv, report.rows);
      write_text_file(dir / "run.csv", csv.str());
    }
    write_text_file(dir / "summary.json", summary_json(cfg, report));
    if (cfg.output.svg && !report.rows.empty()) {
      std::vector<double> t;
      Series e{"E_m", {}};
      Series l{"L_m", {}};
      Series r{"ratio", {}};
      for (const DiagnosticRow& row : report.rows) {
        t.push_back(row.t);
        e.y.push_back(row.energy);
        l.y.push_back(row.dissipation);
        r.y.push_back(row.ratio);
      }
      write_text_file(dir / "energy.svg", render_svg("energy diagnostics vs t", t, {e, l, r}));
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }

  log << "status: " << to_string(report.status) << " after " << report.steps
      << " steps, t = " << report.final_time << '\n';
  if (report.blowup.detected()) {
    log << "blowup: " << to_string(report.blowup.kind) << " at t = " << report.blowup.t
        << " (node " << report.blowup.location << ")\n";
  }
  if (!report.error.empty()) log << "error: " << report.error << '\n';
  log << "sup ratio: " << report.energy.sup_ratio() << ", fps margin: " << report.fps_margin
      << '\n';
  log << "output: " << cfg.output.directory.string() << '\n';
  return exit_code(report.status);
}

std::vector<SweepAxis> parse_sweep_axes(const std::vector<std::string>& specs) {
  if (specs.empty()) throw Error(ErrorCode::ValidationError, "sweep needs at least one axis");
  std::vector<SweepAxis> axes;
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ValidationError, "sweep axis must be key=v1,v2,...: '" + spec + "'");
    }
    SweepAxis axis{spec.substr(0, eq), {}};
    if (axis.key != "mu" && axis.key != "lambda" && axis.key != "epsilon" && axis.key != "law") {
      throw Error(ErrorCode::ValidationError, "cannot sweep over '" + axis.key +
                                                  "' (expected mu, lambda, epsilon or law)");
    }
    for (const auto& a : axes) {
      if (a.key == axis.key) throw Error(ErrorCode::ValidationError, "duplicate axis " + a.key);
    }
    std::istringstream list(spec.substr(eq + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      if (!item.empty()) axis.values.push_back(item);
    }
    if (axis.values.empty()) {
      throw Error(ErrorCode::ValidationError, "empty value list for sweep axis " + axis.key);
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                                const SweepOptions& options) {
  if (axes.empty()) throw Error(ErrorCode::ValidationError, "sweep needs at least one axis");
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) {
      throw Error(ErrorCode::ValidationError, "empty value list for sweep axis " + a.key);
    }
    total *= a.values.size();
    if (total > options.max_runs) {
      throw Error(ErrorCode::ValidationError,
                  "sweep exceeds the cap of " + std::to_string(options.max_runs) + " runs");
    }
  }

  std::vector<SweepRow> rows(total);
  const auto work = [&](std::size_t index) {
    std::vector<std::size_t> pick(axes.size());
    std::size_t rest = index;
    for (std::size_t a = axes.size(); a-- > 0;) {
      pick[a] = rest % axes[a].values.size();
      rest /= axes[a].values.size();
    }
    SweepRow& row = rows[index];
    row.index = index;
    row.law = std::string(to_string(base.law.kind()));
    row.gamma = base.law.gamma();
    row.mu = base.damping.mu;
    row.lambda = base.damping.lambda;
    row.epsilon = base.initial.epsilon;
    try {
      const RunConfig cfg = sweep_point(base, axes, pick);
      row.law = std::string(to_string(cfg.law.kind()));
      row.gamma = cfg.law.gamma();
      row.mu = cfg.damping.mu;
      row.lambda = cfg.damping.lambda;
      row.epsilon = cfg.initial.epsilon;
      const RunReport rep = execute(cfg);
      row.status = rep.status;
      row.blowup_kind = rep.blowup.kind;
      row.blowup_time = rep.blowup.detected() ? rep.blowup.t : -1.0;
      row.final_ratio = rep.energy.empty() ? 0.0 : rep.energy.last().ratio;
      row.sup_ratio = rep.energy.sup_ratio();
      row.fps_margin = rep.fps_margin;
      row.steps = rep.steps;
      row.error = rep.error;
    } catch (const std::exception& e) {
      row.status = RunStatus::Error;
      row.error = e.what();
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, total));
  std::atomic<std::size_t> next{0};
  const auto loop = [&] {
    for (std::size_t i = next++; i < total; i = next++) work(i);
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# schema: dampeuler-sweep v" << kSweepCsvSchemaVersion << '\n';
  out << "index,law,gamma,mu,lambda,epsilon,status,blowup_kind,blowup_time,final_ratio,"
         "sup_ratio,fps_margin,steps,error\n";
  for (const SweepRow& r : rows) {
    std::string err = r.error;
    for (char& c : err) {
      if (c == '"') c = '\'';
      if (c == '\n') c = ' ';
    }
    out << r.index << ',' << r.law << ',' << format_double(r.gamma) << ','
        << format_double(r.mu) << ',' << format_double(r.lambda) << ','
        << format_double(r.epsilon) << ',' << to_string(r.status) << ','
        << to_string(r.blowup_kind) << ',' << format_double(r.blowup_time) << ','
        << format_double(r.final_ratio) << ',' << format_double(r.sup_ratio) << ','
        << format_double(r.fps_margin) << ',' << r.steps << ",\"" << err << "\"\n";
  }
}

int cmd_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
              const SweepOptions& options, std::ostream& log) {
  const std::vector<SweepRow> rows = run_sweep(base, axes, options);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  try {
    std::filesystem::create_directories(base.output.directory);
    write_text_file(base.output.directory / "sweep.csv", csv.str());
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
  bool any_error = false;
  for (const SweepRow& r : rows) {
    log << '#' << r.index << ' ' << r.law << " gamma=" << r.gamma << " mu=" << r.mu
        << " lambda=" << r.lambda << " epsilon=" << r.epsilon << " -> " << to_string(r.status);
    if (r.blowup_time >= 0.0) log << " at t=" << r.blowup_time;
    if (!r.error.empty()) log << " (" << r.error << ')';
    log << '\n';
    any_error = any_error || r.status == RunStatus::Error;
  }
  log << "output: " << (base.output.directory / "sweep.csv").string() << '\n';
  return any_error ? kExitError : kExitGlobal;
}

}  // namespace dampeuler
