#include "dampeuler/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dampeuler/error.hpp"

namespace dampeuler {

std::string_view to_string(BlowupKind kind) noexcept {
  switch (kind) {
    case BlowupKind::None: return "None";
    case BlowupKind::GradientBlowup: return "GradientBlowup";
    case BlowupKind::VacuumApproach: return "VacuumApproach";
    case BlowupKind::NonFinite: return "NonFinite";
    case BlowupKind::HyperbolicityLoss: return "HyperbolicityLoss";
  }
  return "Unknown";
}

EnergyInstant energy_instant(const SymState& s, const TransformParams& tp, const DampingLaw& dl,
                             int m, Nonlinearity nl) {
  if (m < 1 || m > 4) throw Error(ErrorCode::InvalidArgument, "energy order m must be in [1, 4]");
  const SymRate rate = sym_rhs(s, tp, dl, nl);
  const double weighted = sobolev_norm_sq(rate.dv, m - 1) +
                          sobolev_norm_sq(derivative(s.v, 1), m - 1) +
                          sobolev_norm_sq(derivative(s.u, 1), m - 1);
  const double v_sq = l2_norm_sq(s.v);
  const double u_sq = l2_norm_sq(s.u);
  const double w = 1.0 + s.t;
  return {w * w * weighted + v_sq + u_sq, w * weighted + u_sq / w};
}

void EnergyReport::update(double t, double e_inst, double ell_inst) {
  EnergySample sample{t, e_inst, ell_inst, std::sqrt(std::max(e_inst, 0.0)), 0.0, 0.0};
  if (samples_.empty()) {
    initial_sq_ = e_inst;
  } else {
    const EnergySample& prev = samples_.back();
    if (!(t > prev.t)) {
      throw Error(ErrorCode::NonMonotoneTime, "energy samples must have increasing time");
    }
    sample.energy = std::max(prev.energy, sample.energy);
    sample.dissipation = prev.dissipation + 0.5 * (prev.ell_inst + ell_inst) * (t - prev.t);
  }
  if (initial_sq_ > 0.0) {
    sample.ratio = (sample.energy * sample.energy + sample.dissipation) / initial_sq_;
  }
  sup_ratio_ = std::max(sup_ratio_, sample.ratio);
  samples_.push_back(sample);
}

namespace {

// u v_x + (A/2) v u_x
Field transport_bracket(const SymState& s, double h) {
  const Field vx = central_derivative(s.v);
  const Field ux = central_derivative(s.u);
  Field out(s.v.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.u[i] * vx[i] + h * s.v[i] * ux[i];
  return out;
}

// u u_x + (A/2) v v_x
Field pressure_bracket(const SymState& s, double h) {
  const Field vx = central_derivative(s.v);
  const Field ux = central_derivative(s.u);
  Field out(s.v.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.u[i] * ux[i] + h * s.v[i] * vx[i];
  return out;
}

double uniform_step(const SymTriple& traj) {
  const double back = traj.mid.t - traj.prev.t;
  const double fwd = traj.next.t - traj.mid.t;
  if (!(back > 0.0) || std::abs(back - fwd) > 1e-9 * std::max(back, fwd)) {
    throw Error(ErrorCode::NonUniformTriple, "triple time steps differ");
  }
  if (!(traj.prev.v.grid() == traj.mid.v.grid() && traj.mid.v.grid() == traj.next.v.grid())) {
    throw Error(ErrorCode::NonUniformTriple, "triple grids differ");
  }
  return 0.5 * (back + fwd);
}

}  // namespace

QTerms compute_q(const SymTriple& traj, const TransformParams& tp, const DampingLaw& dl,
                 Nonlinearity nl) {
  const double dt = uniform_step(traj);
  const Grid1D& g = traj.mid.v.grid();
  QTerms q{Field(g), Field(g), Field(g), Field(g)};
  if (nl == Nonlinearity::Linearized) return q;

  const double h = tp.half_exponent();
  const double damping = dl.rate(traj.mid.t);
  const Field n1_prev = transport_bracket(traj.prev, h);
  const Field n1_mid = transport_bracket(traj.mid, h);
  const Field n1_next = transport_bracket(traj.next, h);
  const Field dn2 = central_derivative(pressure_bracket(traj.mid, h));
  for (std::size_t i = 0; i < g.size(); ++i) {
    q.q1[i] = -damping * n1_mid[i];
    q.q2[i] = -(n1_next[i] - n1_prev[i]) / (2.0 * dt);
    q.q3[i] = tp.sigma() * dn2[i];
    q.q[i] = q.q1[i] + q.q2[i] + q.q3[i];
  }
  return q;
}

double wave_residual(const SymTriple& traj, const TransformParams& tp, const DampingLaw& dl,
                     Nonlinearity nl) {
  const double dt = uniform_step(traj);
  const QTerms q = compute_q(traj, tp, dl, nl);
  const Field vxx = central_derivative(central_derivative(traj.mid.v));
  const double sigma_sq = tp.sigma() * tp.sigma();
  const double damping = dl.rate(traj.mid.t);
  Field r(traj.mid.v.grid());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double vtt = (traj.next.v[i] - 2.0 * traj.mid.v[i] + traj.prev.v[i]) / (dt * dt);
    const double vt = (traj.next.v[i] - traj.prev.v[i]) / (2.0 * dt);
    r[i] = vtt - sigma_sq * vxx[i] + damping * vt - q.q[i];
  }
  return std::sqrt(l2_norm_sq(r));
}

double support_radius(const Field& f, double tol) {
  double r = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) > tol) r = std::max(r, std::abs(f.grid().x(i)));
  }
  return r;
}

double cone_speed(const SymState& s, const TransformParams& tp) {
  double c = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    c = std::max(c, std::abs(s.u[i]) + std::abs(effective_sound_speed(tp, s.v[i])));
  }
  return c;
}

double fps_margin(std::span<const SymState> traj, const TransformParams& tp, double radius,
                  double tol) {
  double margin = std::numeric_limits<double>::infinity();
  double cone = 0.0;
  double prev_c = 0.0;
  double prev_t = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const SymState& s = traj[k];
    const double c = cone_speed(s, tp);
    if (k > 0) cone += 0.5 * (prev_c + c) * (s.t - prev_t);
    const double support = std::max(support_radius(s.v, tol), support_radius(s.u, tol));
    margin = std::min(margin, radius + cone - support);
    prev_c = c;
    prev_t = s.t;
  }
  return margin;
}

BlowupStatus detect_blowup(const SymState& s, const TransformParams& tp,
                           const BlowupThresholds& thresholds) {
  const std::size_t n = s.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.v[i]) || !std::isfinite(s.u[i])) {
      return {BlowupKind::NonFinite, s.t, i};
    }
  }
  const double a = tp.exponent();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 + a * s.v[i] / (2.0 * tp.sigma());
    if (!(z > 0.0) || v_to_rho(tp, s.v[i]) < thresholds.vacuum_density) {
      return {BlowupKind::VacuumApproach, s.t, i};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(effective_sound_speed(tp, s.v[i]) > 0.0)) {
      return {BlowupKind::HyperbolicityLoss, s.t, i};
    }
  }
  const Field vx = central_derivative(s.v);
  const Field ux = central_derivative(s.u);
  std::size_t worst = 0;
  double grad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = std::max(std::abs(vx[i]), std::abs(ux[i]));
    if (gi > grad) {
      grad = gi;
      worst = i;
    }
  }
  if (grad > thresholds.gradient) return {BlowupKind::GradientBlowup, s.t, worst};
  return {};
}

BlowupStatus detect_blowup(const ConsState& s, const TransformParams& tp,
                           const BlowupThresholds& thresholds) {
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (!std::isfinite(s.rho[i]) || !std::isfinite(s.m[i])) {
      return {BlowupKind::NonFinite, s.t, i};
    }
    if (!(s.rho[i] >= thresholds.vacuum_density)) return {BlowupKind::VacuumApproach, s.t, i};
  }
  return detect_blowup(map_cons_to_sym(s, tp), tp, thresholds);
}

Monitor::Monitor(TransformParams tp, DampingLaw dl, MonitorOptions options)
    : tp_(std::move(tp)),
      dl_(dl),
      options_(options),
      energy_(options.m),
      margin_(std::numeric_limits<double>::infinity()) {}

void Monitor::observe(const SymState& s, double dt) {
  const EnergyInstant inst = energy_instant(s, tp_, dl_, options_.m, options_.nonlinearity);
  const double prev_energy = energy_.empty() ? 0.0 : energy_.last().energy;
  const double prev_diss = energy_.empty() ? 0.0 : energy_.last().dissipation;
  energy_.update(s.t, inst.e_inst, inst.ell_inst);
  const EnergySample& e = energy_.last();
  if (e.energy < prev_energy || e.dissipation < prev_diss) monotone_ = false;

  DiagnosticRow row;
  row.t = s.t;
  row.e_inst = e.e_inst;
  row.ell_inst = e.ell_inst;
  row.energy = e.energy;
  row.dissipation = e.dissipation;
  row.ratio = e.ratio;
  row.max_abs_vx = central_derivative(s.v).max_abs();
  row.max_abs_ux = central_derivative(s.u).max_abs();
  row.support_radius_v = support_radius(s.v, options_.support_tol);
  row.support_radius_u = support_radius(s.u, options_.support_tol);
  row.c_max = cone_speed(s, tp_);
  row.dt = dt;

  if (!rows_.empty()) cone_ += 0.5 * (rows_.back().c_max + row.c_max) * (row.t - rows_.back().t);
  margin_ = std::min(margin_, options_.radius + cone_ -
                                  std::max(row.support_radius_v, row.support_radius_u));
  rows_.push_back(row);
}

SnapshotObserver Monitor::observer() {
  return [this](const SymState& s, double dt) { observe(s, dt); };
}

}  // namespace dampeuler
