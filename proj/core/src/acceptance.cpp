#include "dampeuler/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "dampeuler/config.hpp"
#include "dampeuler/error.hpp"
#include "dampeuler/harness.hpp"

namespace dampeuler {

namespace {

std::string fmt(double x, int precision = 4) {
  std::ostringstream ss;
  ss.precision(precision);
  ss << x;
  return ss.str();
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

struct NamedRun {
  std::string name;
  RunReport report;
  double dx = 0.0;
};

class Context {
 public:
  explicit Context(const AcceptanceOptions& options) : options_(options) {}

  static RunConfig reference(std::size_t n) {
    RunConfig cfg;
    cfg.law = PressureLaw::logarithmic(1.0);
    cfg.damping = {3.0, 1.0};
    cfg.initial.epsilon = 0.05;
    cfg.initial.radius = 1.0;
    cfg.grid = {-60.0, 60.0, n};
    cfg.solver.cfl = 0.4;
    cfg.solver.t_end = 50.0;
    cfg.diagnostics.m = 3;
    return cfg;
  }

  const NamedRun& reference_run(std::size_t n) {
    RunConfig cfg = reference(n);
    if (options_.flip_damping_sign) cfg.damping.mu = -cfg.damping.mu;
    return cached("reference n=" + std::to_string(n), cfg);
  }

  const NamedRun& reference_run_with_tol(std::size_t n, double tol) {
    RunConfig cfg = reference(n);
    if (options_.flip_damping_sign) cfg.damping.mu = -cfg.damping.mu;
    cfg.diagnostics.support_tol = tol;
    return cached("reference n=" + std::to_string(n) + " support tol " + fmt(tol), cfg);
  }

  const NamedRun& blowup_run() {
    RunConfig cfg = reference(2000);
    cfg.damping.mu = 0.0;
    cfg.initial.epsilon = 1.0;
    return cached("undamped eps=1", cfg);
  }

  const NamedRun& equivalence_run(std::size_t n, Formulation f) {
    RunConfig cfg = reference(n);
    cfg.initial.radius = 2.0;
    cfg.grid = {-6.0, 6.0, n};
    cfg.solver.t_end = 1.0;
    cfg.solver.limiter = Limiter::Minmod;
    cfg.formulation = f;
    return cached("equivalence " + std::string(to_string(f)) + " n=" + std::to_string(n), cfg);
  }

  const std::map<std::string, NamedRun>& runs() const { return runs_; }

 private:
  const NamedRun& cached(const std::string& name, const RunConfig& cfg) {
    auto it = runs_.find(name);
    if (it != runs_.end()) return it->second;
    NamedRun r{name, execute(cfg), cfg.grid.build().dx()};
    return runs_.emplace(name, std::move(r)).first->second;
  }

  AcceptanceOptions options_;
  std::map<std::string, NamedRun> runs_;
};

CriterionResult transform_criterion() {
  CriterionResult r{1, "transform", true, {}, {}, 0.0};
  const PressureLaw laws[] = {PressureLaw::polytropic_gamma(1.4, 1.0),
                              PressureLaw(LawKind::Chaplygin, -1.5, 1.0),
                              PressureLaw::logarithmic(1.0)};
  double worst_roundtrip = 0.0;
  double worst_speed = 0.0;
  for (const PressureLaw& law : laws) {
    const TransformParams tp(law);
    for (int i = 0; i < 100; ++i) {
      const double rho = 0.1 * std::pow(100.0, i / 99.0);
      const double v = rho_to_v(tp, rho);
      worst_roundtrip = std::max(worst_roundtrip, std::abs(v_to_rho(tp, v) - rho) / rho);
      const double c = sound_speed(law, rho);
      worst_speed = std::max(worst_speed,
                             std::abs(effective_sound_speed(tp, v) - c) / std::max(1.0, c));
    }
  }
  r.passed = worst_roundtrip <= 1e-12 && worst_speed <= 1e-12;
  r.detail = "max roundtrip rel err " + fmt(worst_roundtrip) + ", max sound-speed err " +
             fmt(worst_speed) + " (tol 1e-12)";
  return r;
}

CriterionResult energy_criterion(Context& ctx) {
  CriterionResult r{2, "energy", false, {}, {}, 0.0};
  const NamedRun& fine = ctx.reference_run(2000);
  const NamedRun& coarse = ctx.reference_run(1000);
  const double s2 = fine.report.energy.sup_ratio();
  const double s1 = coarse.report.energy.sup_ratio();
  const double change = std::abs(s2 - s1) / s2;
  const bool global = fine.report.status == RunStatus::CompletedGlobal &&
                      coarse.report.status == RunStatus::CompletedGlobal;
  r.passed = global && std::isfinite(s2) && s2 <= 100.0 && change < 0.2;
  r.detail = "status " + std::string(to_string(fine.report.status)) + "/" +
             std::string(to_string(coarse.report.status)) + ", sup ratio " + fmt(s2) +
             " (n=2000) vs " + fmt(s1) + " (n=1000), change " + fmt(100 * change, 3) +
             "% (need <= 100, < 20%)";
  return r;
}

CriterionResult equivalence_criterion() {
  CriterionResult r{3, "equivalence", false, {}, {}, 0.0};
  const std::size_t sizes[] = {801, 1601, 3201};
  std::vector<double> diffs;
  for (std::size_t n : sizes) {
    RunConfig cfg = Context::reference(n);
    cfg.initial.radius = 2.0;
    cfg.grid = {-6.0, 6.0, n};
    cfg.solver.t_end = 1.0;
    const Grid1D grid = cfg.grid.build();
    const TransformParams tp(cfg.law);
    const InitialStates init = make_initial(cfg.initial, grid, tp);
    const RunSetup setup{tp, cfg.damping, Nonlinearity::Full, {}};
    const RunResult sym = run(cfg.solver, Formulation::Symmetric, setup, init);
    const RunResult cons = run(cfg.solver, Formulation::Conservative, setup, init);
    if (sym.status != RunStatus::CompletedGlobal || cons.status != RunStatus::CompletedGlobal ||
        !cons.final_cons) {
      r.detail = "run failed at n=" + std::to_string(n);
      return r;
    }
    const SymState mapped = map_cons_to_sym(*cons.final_cons, tp);
    diffs.push_back(std::max((mapped.v - sym.final_state.v).max_abs(),
                             (mapped.u - sym.final_state.u).max_abs()));
  }
  const double p1 = observed_order(diffs[0], diffs[1]);
  const double p2 = observed_order(diffs[1], diffs[2]);
  r.passed = p1 >= 1.5 && p2 >= 1.5;
  r.detail = "Linf diff " + fmt(diffs[0]) + ", " + fmt(diffs[1]) + ", " + fmt(diffs[2]) +
             " -> orders " + fmt(p1, 3) + ", " + fmt(p2, 3) + " (need >= 1.5)";
  return r;
}

std::optional<SymTriple> residual_triple(std::size_t n, std::size_t steps, double epsilon) {
  RunConfig cfg = Context::reference(n);
  cfg.initial.epsilon = epsilon;
  const double dt = 1.0 / static_cast<double>(steps);
  cfg.solver.fixed_dt = dt;
  cfg.solver.snapshot_stride = steps;
  cfg.solver.capture_triples = true;
  cfg.solver.t_end = static_cast<double>(steps + 1) * dt;
  const Grid1D grid = cfg.grid.build();
  const TransformParams tp(cfg.law);
  const RunSetup setup{tp, cfg.damping, Nonlinearity::Full, {}};
  const RunResult res =
      run(cfg.solver, Formulation::Symmetric, setup, make_initial(cfg.initial, grid, tp));
  if (res.triples.empty()) return std::nullopt;
  return res.triples.front();
}

CriterionResult residual_criterion() {
  CriterionResult r{4, "residual", false, {}, {}, 0.0};
  const TransformParams tp(PressureLaw::logarithmic(1.0));
  const DampingLaw dl{3.0, 1.0};
  std::vector<double> res;
  for (int k = 0; k < 3; ++k) {
    const std::size_t n = 8000 * (std::size_t{1} << k) + 1;
    const auto triple = residual_triple(n, 200 * (std::size_t{1} << k), 0.05);
    if (!triple) {
      r.detail = "no uniform triple at t=1 for n=" + std::to_string(n);
      return r;
    }
    res.push_back(wave_residual(*triple, tp, dl));
  }
  const auto background = residual_triple(1001, 25, 0.0);
  const double bg = background ? wave_residual(*background, tp, dl) : -1.0;
  const double p1 = observed_order(res[0], res[1]);
  const double p2 = observed_order(res[1], res[2]);
  r.passed = p1 >= 1.5 && p2 >= 1.5 && bg == 0.0;
  r.detail = "residual " + fmt(res[0]) + ", " + fmt(res[1]) + ", " + fmt(res[2]) +
             " -> orders " + fmt(p1, 3) + ", " + fmt(p2, 3) +
             " (need >= 1.5); background residual " + fmt(bg);
  return r;
}

CriterionResult fps_criterion(Context& ctx) {
  CriterionResult r{5, "fps", false, {}, {}, 0.0};
  const NamedRun& run = ctx.reference_run(2000);
  const double margin = run.report.fps_margin;
  r.passed = run.report.status == RunStatus::CompletedGlobal && margin >= -2.0 * run.dx;
  r.detail = "min margin " + fmt(margin) + " = " + fmt(margin / run.dx) +
             " dx (need >= -2 dx, support tol 1e-12)";
  for (double tol : {1e-8, 1e-6}) {
    const NamedRun& loose = ctx.reference_run_with_tol(2000, tol);
    r.info.push_back("support tol " + fmt(tol) + ": min margin " +
                     fmt(loose.report.fps_margin / loose.dx) + " dx");
  }
  return r;
}

CriterionResult blowup_criterion(Context& ctx) {
  CriterionResult r{6, "blowup", false, {}, {}, 0.0};
  const NamedRun& undamped = ctx.blowup_run();
  const NamedRun& damped = ctx.reference_run(2000);
  const BlowupStatus& b = undamped.report.blowup;
  r.passed = undamped.report.status == RunStatus::BlowupDetected && std::isfinite(b.t) &&
             damped.report.status == RunStatus::CompletedGlobal;
  r.detail = "mu=0, eps=1: " + std::string(to_string(undamped.report.status));
  if (b.detected()) r.detail += " (" + std::string(to_string(b.kind)) + " at t=" + fmt(b.t) + ")";
  r.detail += "; mu=3, eps=0.05: " + std::string(to_string(damped.report.status));
  return r;
}

CriterionResult kernels_criterion() {
  CriterionResult r{7, "kernels", false, {}, {}, 0.0};

  const Grid1D g(-2.0, 2.0, 41);
  const Field cubic = Field::sample(g, [](double x) { return 1 + 2 * x - x * x + 0.5 * x * x * x; });
  const Field exact[] = {
      Field::sample(g, [](double x) { return 2 - 2 * x + 1.5 * x * x; }),
      Field::sample(g, [](double x) { return -2 + 3 * x; }),
      Field(g, 3.0),
  };
  double deriv_err = 0.0;
  for (int k = 1; k <= 3; ++k) {
    deriv_err = std::max(deriv_err, (derivative(cubic, k) - exact[k - 1]).max_abs() /
                                        (1.0 + exact[k - 1].max_abs()));
  }

  const Grid1D gl(-1.0, 1.0, 17);
  const double quad = l2_norm_sq(Field::sample(gl, [](double x) { return std::sqrt(2.0 + x); }));
  EnergyReport er(3);
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    er.update(t, 1.0, t);
  }
  const double quad_err = std::max(std::abs(quad - 4.0) / 4.0, std::abs(er.last().dissipation - 0.5) / 0.5);

  const Grid1D gs(-2.0, 2.0, 801);
  const double sob = sobolev_norm_sq(Field::sample(gs, [](double x) { return bump_profile(x, 1.0); }), 1);
  const std::size_t fine_n = 16 * (gs.size() - 1) + 1;
  const Grid1D gf(-2.0, 2.0, fine_n);
  double oracle = 0.0;
  for (std::size_t i = 0; i < fine_n; ++i) {
    const double x = gf.x(i);
    const double b = bump_profile(x, 1.0);
    const double db = bump_profile_derivative(x, 1.0);
    const double w = (i == 0 || i + 1 == fine_n) ? 0.5 : 1.0;
    oracle += w * (b * b + db * db) * gf.dx();
  }
  const double sob_err = std::abs(sob - oracle) / oracle;

  const Grid1D gu(-1.0, 1.0, 32);
  const TransformParams tp(PressureLaw::logarithmic(1.0));
  const DampingLaw dl{3.0, 1.0};
  const double u0 = 0.25;
  SymState s{Field(gu, 0.0), Field(gu, u0), 0.0};
  const double dt = 0.01;
  for (int i = 0; i < 100; ++i) {
    s = rk4_step(s, dt, [&](const SymState& st) { return sym_rhs(st, tp, dl); });
  }
  const double ode_err = (s.u - Field(gu, u0 * std::pow(1.0 + s.t, -3.0))).max_abs();

  r.passed = deriv_err <= 1e-10 && quad_err <= 1e-13 && sob_err <= 1e-6 && ode_err <= 1e-8;
  r.detail = "cubic stencil err " + fmt(deriv_err) + ", linear quadrature err " + fmt(quad_err) +
             ", Sobolev rel err " + fmt(sob_err) + ", RK4 damping err " + fmt(ode_err);
  return r;
}

CriterionResult invariants_criterion(Context& ctx) {
  CriterionResult r{8, "invariants", false, {}, {}, 0.0};
  (void)ctx.reference_run(1000);
  (void)ctx.reference_run(2000);
  (void)ctx.blowup_run();
  (void)ctx.equivalence_run(801, Formulation::Symmetric);
  (void)ctx.equivalence_run(801, Formulation::Conservative);
  std::vector<std::string> broken;
  for (const auto& [name, run] : ctx.runs()) {
    if (!run.report.energy_monotone) broken.push_back(name);
  }

  const Grid1D g(-std::numbers::pi, std::numbers::pi, 201);
  const TransformParams tp(PressureLaw::logarithmic(1.0));
  const DampingLaw dl{3.0, 1.0};
  const auto triple = [&](double a) {
    const auto at = [&](double t) {
      return SymState{Field::sample(g, [&](double x) { return a * std::sin(x) * (1 + t); }),
                      Field::sample(g, [&](double x) { return a * std::cos(x) * (1 + t); }), t};
    };
    return SymTriple{at(0.49), at(0.5), at(0.51)};
  };
  const double scale = 3.0;
  const Field q1 = compute_q(triple(0.1), tp, dl).q;
  const Field q3 = compute_q(triple(0.1 * scale), tp, dl).q;
  const double dev = (q3 - (scale * scale) * q1).max_abs() / ((scale * scale) * q1).max_abs();

  r.passed = broken.empty() && dev <= 1e-12;
  r.detail = std::to_string(ctx.runs().size() - broken.size()) + "/" +
             std::to_string(ctx.runs().size()) + " runs with monotone E_m, L_m; Q scaling dev " +
             fmt(dev) + " (tol 1e-12)";
  for (const auto& name : broken) r.info.push_back("non-monotone energy: " + name);
  return r;
}

constexpr std::string_view kNames[] = {"transform", "energy", "equivalence", "residual",
                                       "fps",       "blowup", "kernels",     "invariants"};

const std::map<std::string_view, std::vector<int>>& suites() {
  static const std::map<std::string_view, std::vector<int>> table = {
      {"transform", {1}}, {"energy", {2}}, {"equivalence", {3}}, {"residual", {4}},
      {"fps", {5}},       {"blowup", {6}}, {"kernels", {7}},     {"invariants", {8}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8}},
  };
  return table;
}

}  // namespace

std::vector<std::string_view> acceptance_suites() {
  return {"transform", "energy", "equivalence", "residual", "fps",
          "blowup",    "kernels", "invariants", "all"};
}

std::vector<int> suite_criteria(std::string_view suite) {
  const auto it = suites().find(suite);
  if (it == suites().end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  }
  return it->second;
}

std::vector<CriterionResult> run_acceptance(std::string_view suite,
                                            const AcceptanceOptions& options) {
  const std::vector<int> ids = suite_criteria(suite);
  Context ctx(options);
  std::vector<CriterionResult> results;
  for (int id : ids) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      switch (id) {
        case 1: r = transform_criterion(); break;
        case 2: r = energy_criterion(ctx); break;
        case 3: r = equivalence_criterion(); break;
        case 4: r = residual_criterion(); break;
        case 5: r = fps_criterion(ctx); break;
        case 6: r = blowup_criterion(ctx); break;
        case 7: r = kernels_criterion(); break;
        case 8: r = invariants_criterion(ctx); break;
        default: break;
      }
    } catch (const std::exception& e) {
      r = {id, std::string(kNames[id - 1]), false, e.what(), {}, 0.0};
    }
    r.id = id;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.progress) *options.progress << format_result(r) << std::flush;
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream ss;
  ss << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ' ' << r.name << ": " << r.detail << " ["
     << fmt(r.seconds, 3) << " s]\n";
  for (const auto& line : r.info) ss << "      " << line << '\n';
  return ss.str();
}

int cmd_check(std::string_view suite, std::ostream& out, const AcceptanceOptions& options) {
  AcceptanceOptions opts = options;
  opts.progress = &out;
  const auto results = run_acceptance(suite, opts);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    if (!r.passed) failed.push_back(std::to_string(r.id) + " " + r.name);
  }
  out << results.size() - failed.size() << "/" << results.size() << " criteria passed\n";
  for (const auto& f : failed) out << "failed: " << f << '\n';
  return failed.empty() ? kExitGlobal : kExitError;
}

}  // namespace dampeuler
