#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dampeuler/blowup.hpp"
#include "dampeuler/dynamics.hpp"

namespace dampeuler {

struct EnergyInstant {
  double e_inst = 0.0;
  double ell_inst = 0.0;
};

/// Instantaneous integrands of the weighted energy E_m and the dissipation
/// integral L_m. v_t is taken from sym_rhs, not from time differencing.
///
///   e   = (1+t)^2 [S(v_t) + S(v_x) + S(u_x)] + |v|^2 + |u|^2
///   ell = (1+t)   [S(v_t) + S(v_x) + S(u_x)] + |u|^2 / (1+t)
///
/// with S = sobolev_norm_sq(., m-1).
EnergyInstant energy_instant(const SymState& s, const TransformParams& tp, const DampingLaw& dl,
                             int m, Nonlinearity nl = Nonlinearity::Full);

struct EnergySample {
  double t = 0.0;
  double e_inst = 0.0;
  double ell_inst = 0.0;
  double energy = 0.0;       ///< running sup of sqrt(e_inst), i.e. E_m(t)
  double dissipation = 0.0;  ///< running trapezoid integral of ell_inst, i.e. L_m(t)
  double ratio = 0.0;        ///< (E_m^2 + L_m) / E_m(0)^2, 0 while E_m(0) = 0
};

/// Running E_m / L_m bookkeeping along a trajectory.
class EnergyReport {
 public:
  explicit EnergyReport(int m = 3) : m_(m) {}

  /// Throws NonMonotoneTime unless t exceeds the previous sample time.
  void update(double t, double e_inst, double ell_inst);

  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] const std::vector<EnergySample>& samples() const noexcept { return samples_; }
  [[nodiscard]] bool empty() const noexcept { return samples_.empty(); }
  [[nodiscard]] const EnergySample& last() const { return samples_.back(); }
  [[nodiscard]] double sup_ratio() const noexcept { return sup_ratio_; }

 private:
  int m_;
  std::vector<EnergySample> samples_;
  double initial_sq_ = 0.0;
  double sup_ratio_ = 0.0;
};

struct QTerms {
  Field q1;
  Field q2;
  Field q3;
  Field q;
};

/// Source of the damped wave equation satisfied by v, evaluated at the
/// middle of a uniform triple. Throws NonUniformTriple. Linearized
/// dynamics have Q = 0.
QTerms compute_q(const SymTriple& traj, const TransformParams& tp, const DampingLaw& dl,
                 Nonlinearity nl = Nonlinearity::Full);

/// L2 norm of v_tt - sigma^2 v_xx + s(t) v_t - Q at the middle of the
/// triple, with centered time differences.
double wave_residual(const SymTriple& traj, const TransformParams& tp, const DampingLaw& dl,
                     Nonlinearity nl = Nonlinearity::Full);

/// Largest |x_i| with |f_i| > tol; 0 when there is none.
double support_radius(const Field& f, double tol = 1e-12);

/// max_i |u_i| + |sigma + (A/2) v_i|
double cone_speed(const SymState& s, const TransformParams& tp);

/// Minimum over snapshots of R + int_0^t c_max - max(support(v), support(u)),
/// with the cone integral by the trapezoid rule over the snapshot times.
double fps_margin(std::span<const SymState> traj, const TransformParams& tp, double radius,
                  double tol = 1e-12);

BlowupStatus detect_blowup(const SymState& s, const TransformParams& tp,
                           const BlowupThresholds& thresholds = {});
BlowupStatus detect_blowup(const ConsState& s, const TransformParams& tp,
                           const BlowupThresholds& thresholds = {});

/// One row of the per-snapshot diagnostics table.
struct DiagnosticRow {
  double t = 0.0;
  double e_inst = 0.0;
  double ell_inst = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double ratio = 0.0;
  double max_abs_vx = 0.0;
  double max_abs_ux = 0.0;
  double support_radius_v = 0.0;
  double support_radius_u = 0.0;
  double c_max = 0.0;
  double dt = 0.0;
};

struct MonitorOptions {
  int m = 3;
  double radius = 1.0;
  double support_tol = 1e-12;
  Nonlinearity nonlinearity = Nonlinearity::Full;
};

/// Accumulates energy, finite-propagation and gradient diagnostics from
/// the snapshots of a run. Plug observer() into dynamics::run.
class Monitor {
 public:
  Monitor(TransformParams tp, DampingLaw dl, MonitorOptions options);

  void observe(const SymState& s, double dt);
  [[nodiscard]] SnapshotObserver observer();

  [[nodiscard]] const EnergyReport& energy() const noexcept { return energy_; }
  [[nodiscard]] const std::vector<DiagnosticRow>& rows() const noexcept { return rows_; }
  /// +infinity before the first snapshot.
  [[nodiscard]] double fps_margin() const noexcept { return margin_; }
  [[nodiscard]] bool energy_monotone() const noexcept { return monotone_; }

 private:
  TransformParams tp_;
  DampingLaw dl_;
  MonitorOptions options_;
  EnergyReport energy_;
  std::vector<DiagnosticRow> rows_;
  double cone_ = 0.0;
  double margin_;
  bool monotone_ = true;
};

}  // namespace dampeuler
