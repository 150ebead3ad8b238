#include "dampeuler/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dampeuler/diagnostics.hpp"
#include "dampeuler/error.hpp"

namespace dampeuler {

double DampingLaw::rate(double t) const noexcept {
  if (mu == 0.0) return 0.0;
  if (lambda == 1.0) return mu / (1.0 + t);
  return mu / std::pow(1.0 + t, lambda);
}

void DampingLaw::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::ValidationError, "damping mu must be finite and >= 0");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::ValidationError, "damping lambda must be finite and >= 0");
  }
}

std::string_view to_string(Limiter limiter) noexcept {
  return limiter == Limiter::Minmod ? "minmod" : "none";
}

std::string_view to_string(Formulation formulation) noexcept {
  return formulation == Formulation::Symmetric ? "symmetric" : "conservative";
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::CompletedGlobal: return "CompletedGlobal";
    case RunStatus::BlowupDetected: return "BlowupDetected";
    case RunStatus::Error: return "Error";
  }
  return "Unknown";
}

Limiter parse_limiter(std::string_view name) {
  if (name == "minmod") return Limiter::Minmod;
  if (name == "none") return Limiter::None;
  throw Error(ErrorCode::ValidationError, "unknown limiter '" + std::string(name) + "'");
}

Formulation parse_formulation(std::string_view name) {
  if (name == "symmetric" || name == "sym") return Formulation::Symmetric;
  if (name == "conservative" || name == "cons") return Formulation::Conservative;
  throw Error(ErrorCode::ValidationError, "unknown formulation '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl < 1.0)) throw Error(ErrorCode::ValidationError, "cfl must be in (0, 1)");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::ValidationError, "t_end must be finite and >= 0");
  }
  if (snapshot_stride == 0) throw Error(ErrorCode::ValidationError, "snapshot_stride must be >= 1");
  if (fixed_dt && !(*fixed_dt > 0.0)) throw Error(ErrorCode::ValidationError, "dt must be > 0");
  if (!(dissipation >= 0.0)) throw Error(ErrorCode::ValidationError, "dissipation must be >= 0");
}

// ---------------------------------------------------------------------------
// Symmetric system

SymRate sym_rhs(const SymState& s, const TransformParams& tp, const DampingLaw& dl,
                Nonlinearity nl) {
  const Grid1D& g = s.v.grid();
  const double sigma = tp.sigma();
  const double h = tp.half_exponent();
  const double damping = dl.rate(s.t);
  const bool quadratic = nl == Nonlinearity::Full;

  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(s.v[i]) || !std::isfinite(s.u[i])) {
      throw Error(ErrorCode::NonFiniteValue, "state is not finite", i);
    }
    if (quadratic && !(sigma + h * s.v[i] > 0.0)) {
      throw Error(ErrorCode::HyperbolicityLoss, "sigma + (A/2) v <= 0", i);
    }
  }

  const Field vx = central_derivative(s.v);
  const Field ux = central_derivative(s.u);
  SymRate out{Field(g), Field(g)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = s.v[i];
    const double u = s.u[i];
    double dv = -sigma * ux[i];
    double du = -sigma * vx[i] - damping * u;
    if (quadratic) {
      dv -= u * vx[i] + h * v * ux[i];
      du -= u * ux[i] + h * v * vx[i];
    }
    out.dv[i] = dv;
    out.du[i] = du;
  }
  return out;
}

Field high_order_dissipation(const Field& f, double eps, double c) {
  const Grid1D& g = f.grid();
  const std::size_t n = g.size();
  Field out(g);
  if (eps == 0.0) return out;
  const auto at = [&](std::ptrdiff_t j) {
    return f[static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(n) - 1))];
  };
  const double scale = eps * c / (64.0 * g.dx());
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::ptrdiff_t>(i);
    const double d6 = at(j - 3) - 6.0 * at(j - 2) + 15.0 * at(j - 1) - 20.0 * f[i] +
                      15.0 * at(j + 1) - 6.0 * at(j + 2) + at(j + 3);
    out[i] = scale * d6;
  }
  return out;
}

double max_char_speed(const SymState& s, const TransformParams& tp) {
  double vmax = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    const CharSpeeds cs = [&] {
      try {
        return char_speeds(s.v[i], s.u[i], tp);
      } catch (const Error& e) {
        throw Error(e.code(), "sigma + (A/2) v <= 0", i);
      }
    }();
    vmax = std::max({vmax, std::abs(cs.minus), std::abs(cs.plus)});
  }
  return vmax;
}

double cfl_dt(const SymState& s, const TransformParams& tp, const SolverConfig& cfg) {
  return cfg.cfl * s.v.grid().dx() / max_char_speed(s, tp);
}

// ---------------------------------------------------------------------------
// Conservative system

namespace {

struct Cons {
  double rho;
  double m;
};

double minmod(double a, double b) noexcept {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

struct FluxAndSpeed {
  Cons flux;
  double speed;
};

FluxAndSpeed physical_flux(const PressureLaw& law, Cons w) {
  const double u = w.m / w.rho;
  return {{w.m, w.m * u + pressure(law, w.rho)}, std::abs(u) + sound_speed(law, w.rho)};
}

Cons rusanov(const PressureLaw& law, Cons left, Cons right) {
  const FluxAndSpeed fl = physical_flux(law, left);
  const FluxAndSpeed fr = physical_flux(law, right);
  const double a = std::max(fl.speed, fr.speed);
  return {0.5 * (fl.flux.rho + fr.flux.rho) - 0.5 * a * (right.rho - left.rho),
          0.5 * (fl.flux.m + fr.flux.m) - 0.5 * a * (right.m - left.m)};
}

}  // namespace

ConsRate cons_rhs(const ConsState& s, const PressureLaw& law, const DampingLaw& dl,
                  Limiter limiter) {
  const Grid1D& g = s.rho.grid();
  const std::size_t n = g.size();
  constexpr std::size_t kGhost = 2;

  // Transmissive ghost cells: a uniform state is an exact fixed point.
  std::vector<Cons> w(n + 2 * kGhost);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.rho[i]) || !std::isfinite(s.m[i])) {
      throw Error(ErrorCode::NonFiniteValue, "state is not finite", i);
    }
    if (!(s.rho[i] > 0.0)) throw Error(ErrorCode::NonPositiveDensity, "density <= 0", i);
    w[i + kGhost] = {s.rho[i], s.m[i]};
  }
  for (std::size_t k = 0; k < kGhost; ++k) {
    w[k] = w[kGhost];
    w[n + kGhost + k] = w[n + kGhost - 1];
  }

  std::vector<Cons> slope(w.size(), Cons{0.0, 0.0});
  if (limiter == Limiter::Minmod) {
    for (std::size_t j = 1; j + 1 < w.size(); ++j) {
      slope[j] = {minmod(w[j].rho - w[j - 1].rho, w[j + 1].rho - w[j].rho),
                  minmod(w[j].m - w[j - 1].m, w[j + 1].m - w[j].m)};
      // Fall back to piecewise constant where the reconstruction would
      // produce a non-positive face density.
      if (!(w[j].rho - 0.5 * std::abs(slope[j].rho) > 0.0)) slope[j] = {0.0, 0.0};
    }
  }

  // flux[k] sits between extended cells kGhost-1+k and kGhost+k.
  std::vector<Cons> flux(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t jl = kGhost - 1 + k;
    const std::size_t jr = jl + 1;
    const Cons left{w[jl].rho + 0.5 * slope[jl].rho, w[jl].m + 0.5 * slope[jl].m};
    const Cons right{w[jr].rho - 0.5 * slope[jr].rho, w[jr].m - 0.5 * slope[jr].m};
    flux[k] = rusanov(law, left, right);
  }

  const double inv_dx = 1.0 / g.dx();
  const double damping = dl.rate(s.t);
  ConsRate out{Field(g), Field(g)};
  for (std::size_t i = 0; i < n; ++i) {
    out.drho[i] = -(flux[i + 1].rho - flux[i].rho) * inv_dx;
    out.dm[i] = -(flux[i + 1].m - flux[i].m) * inv_dx - damping * s.m[i];
  }
  return out;
}

double max_char_speed(const ConsState& s, const PressureLaw& law) {
  double vmax = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (!(s.rho[i] > 0.0)) throw Error(ErrorCode::NonPositiveDensity, "density <= 0", i);
    vmax = std::max(vmax, std::abs(s.m[i] / s.rho[i]) + sound_speed(law, s.rho[i]));
  }
  return vmax;
}

double cfl_dt(const ConsState& s, const PressureLaw& law, const SolverConfig& cfg) {
  return cfg.cfl * s.rho.grid().dx() / max_char_speed(s, law);
}

// ---------------------------------------------------------------------------
// Time integration

SymState advanced(const SymState& s, const SymRate& k, double h) {
  SymState out = s;
  out.v.add_scaled(h, k.dv);
  out.u.add_scaled(h, k.du);
  out.t = s.t + h;
  return out;
}

ConsState advanced(const ConsState& s, const ConsRate& k, double h) {
  ConsState out = s;
  out.rho.add_scaled(h, k.drho);
  out.m.add_scaled(h, k.dm);
  out.t = s.t + h;
  return out;
}

void accumulate(SymRate& acc, const SymRate& k, double w) {
  acc.dv.add_scaled(w, k.dv);
  acc.du.add_scaled(w, k.du);
}

void accumulate(ConsRate& acc, const ConsRate& k, double w) {
  acc.drho.add_scaled(w, k.drho);
  acc.dm.add_scaled(w, k.dm);
}

void require_finite(const SymState& s) {
  s.v.require_finite();
  s.u.require_finite();
}

void require_finite(const ConsState& s) {
  s.rho.require_finite();
  s.m.require_finite();
}

// ---------------------------------------------------------------------------
// Driver

namespace {

BlowupKind kind_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::HyperbolicityLoss: return BlowupKind::HyperbolicityLoss;
    case ErrorCode::NonFiniteValue: return BlowupKind::NonFinite;
    case ErrorCode::NonPositiveDensity:
    case ErrorCode::InvalidVRange: return BlowupKind::VacuumApproach;
    default: return BlowupKind::None;
  }
}

bool same_step(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

}  // namespace

RunResult run(const SolverConfig& cfg, Formulation formulation, const RunSetup& setup,
              const InitialStates& initial, const SnapshotObserver& observer) {
  cfg.validate();
  const TransformParams& tp = setup.tp;
  const PressureLaw& law = tp.law();
  const bool conservative = formulation == Formulation::Conservative;

  RunResult result{RunStatus::CompletedGlobal, {}, {}, 0, initial.sym, std::nullopt, {}, {}};
  SymState sym = initial.sym;
  ConsState cons = initial.cons;

  std::size_t last_emitted = static_cast<std::size_t>(-1);
  auto emit = [&](const SymState& s, double dt, std::size_t step) {
    if (step == last_emitted) return;
    last_emitted = step;
    if (observer) observer(s, dt);
    if (cfg.store_snapshots) result.snapshots.push_back(s);
  };

  auto finish = [&](std::size_t step) {
    result.steps = step;
    result.final_state = sym;
    if (conservative) result.final_cons = cons;
    return result;
  };

  BlowupStatus initial_status = conservative ? detect_blowup(cons, tp, setup.thresholds)
                                             : detect_blowup(sym, tp, setup.thresholds);
  if (initial_status.detected()) {
    result.status = RunStatus::BlowupDetected;
    result.blowup = initial_status;
    return finish(0);
  }
  emit(sym, 0.0, 0);

  const auto rhs_sym = [&](const SymState& s) {
    SymRate k = sym_rhs(s, tp, setup.damping, setup.nonlinearity);
    if (cfg.dissipation > 0.0) {
      k.dv += high_order_dissipation(s.v, cfg.dissipation, tp.sigma());
      k.du += high_order_dissipation(s.u, cfg.dissipation, tp.sigma());
    }
    return k;
  };
  const auto rhs_cons = [&](const ConsState& s) {
    return cons_rhs(s, law, setup.damping, cfg.limiter);
  };

  const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
  double dt = 0.0;
  double last_step = 0.0;
  std::size_t step = 0;
  std::optional<SymTriple> pending;
  double pending_dt = 0.0;
  SymState before = sym;

  while (cfg.t_end - sym.t > t_eps) {
    if (step >= cfg.max_steps) {
      result.status = RunStatus::Error;
      result.error = "step limit reached at t = " + std::to_string(sym.t);
      emit(sym, last_step, step);
      return finish(step);
    }
    double h = dt;
    try {
      // When triples are captured, the step leaving a snapshot reuses the
      // previous dt so that the snapshot sits in the middle of a uniform triple.
      if (step == 0 || !cfg.capture_triples || step % cfg.snapshot_stride != 0) {
        dt = cfg.fixed_dt ? *cfg.fixed_dt
                          : (conservative ? cfl_dt(cons, law, cfg) : cfl_dt(sym, tp, cfg));
      }
      h = dt;
      if (sym.t + h > cfg.t_end - 1e-9 * dt) h = cfg.t_end - sym.t;

      if (cfg.capture_triples) before = sym;
      if (conservative) {
        ConsState next = rk4_step(cons, h, rhs_cons);
        BlowupStatus st = detect_blowup(next, tp, setup.thresholds);
        if (st.detected()) {
          result.status = RunStatus::BlowupDetected;
          result.blowup = st;
          emit(sym, last_step, step);
          return finish(step);
        }
        cons = std::move(next);
        sym = map_cons_to_sym(cons, tp);
      } else {
        SymState next = rk4_step(sym, h, rhs_sym);
        BlowupStatus st = detect_blowup(next, tp, setup.thresholds);
        if (st.detected()) {
          result.status = RunStatus::BlowupDetected;
          result.blowup = st;
          emit(sym, last_step, step);
          return finish(step);
        }
        sym = std::move(next);
      }
      last_step = h;
    } catch (const Error& e) {
      const BlowupKind kind = kind_for(e.code());
      emit(sym, last_step, step);
      if (kind == BlowupKind::None) {
        result.status = RunStatus::Error;
        result.error = e.what();
      } else {
        result.status = RunStatus::BlowupDetected;
        result.blowup = {kind, sym.t + h, e.index().value_or(0)};
      }
      return finish(step);
    }
    ++step;

    if (pending) {
      if (same_step(pending_dt, last_step)) {
        pending->next = sym;
        result.triples.push_back(std::move(*pending));
      }
      pending.reset();
    }
    const bool at_end = cfg.t_end - sym.t <= t_eps;
    if (step % cfg.snapshot_stride == 0 || at_end) {
      emit(sym, last_step, step);
      if (cfg.capture_triples && !at_end) {
        pending = SymTriple{before, sym, sym};
        pending_dt = last_step;
      }
    }
  }
  result.status = RunStatus::CompletedGlobal;
  return finish(step);
}

}  // namespace dampeuler
