#pragma once

/**
 * Method-of-lines evolution of the damped barotropic Euler system in two
 * formulations:
 *
 *   symmetric     v_t + sigma u_x = -u v_x - (A/2) v u_x
 *                 u_t + sigma v_x + s(t) u = -u u_x - (A/2) v v_x
 *
 *   conservative  rho_t + (rho u)_x = 0
 *                 (rho u)_t + (rho u^2 + p(rho))_x + s(t) rho u = 0
 *
 * with damping s(t) = mu / (1 + t)^lambda. The symmetric solver uses the
 * fourth-order central derivative from grid.hpp; the conservative solver
 * is a Rusanov finite-volume scheme with optional minmod MUSCL slopes.
 * Both are advanced with classical RK4 and the damping is kept inside the
 * right-hand side.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dampeuler/blowup.hpp"
#include "dampeuler/initial_data.hpp"
#include "dampeuler/state.hpp"
#include "dampeuler/transform.hpp"

namespace dampeuler {

struct DampingLaw {
  double mu = 3.0;
  double lambda = 1.0;

  [[nodiscard]] double rate(double t) const noexcept;
  /// Throws ValidationError unless mu >= 0 and lambda >= 0.
  void validate() const;
};

enum class Limiter { None, Minmod };
enum class Formulation { Symmetric, Conservative };
/// Linearized drops the quadratic terms of the symmetric system.
enum class Nonlinearity { Full, Linearized };

std::string_view to_string(Limiter limiter) noexcept;
std::string_view to_string(Formulation formulation) noexcept;
Limiter parse_limiter(std::string_view name);
Formulation parse_formulation(std::string_view name);

struct SolverConfig {
  double cfl = 0.4;
  double t_end = 50.0;
  std::size_t snapshot_stride = 1;
  Limiter limiter = Limiter::Minmod;
  /// Overrides the CFL step when set.
  std::optional<double> fixed_dt;
  bool store_snapshots = false;
  /// Keep (t - dt, t, t + dt) around every interior snapshot.
  bool capture_triples = false;
  std::size_t max_steps = 50'000'000;
  /// Strength of the sixth-difference damping added to the symmetric
  /// solver (0 disables it). Acts only on grid-scale modes.
  double dissipation = 0.0;

  void validate() const;
};

struct SymRate {
  Field dv;
  Field du;
};

struct ConsRate {
  Field drho;
  Field dm;
};

SymRate sym_rhs(const SymState& s, const TransformParams& tp, const DampingLaw& dl,
                Nonlinearity nl = Nonlinearity::Full);

ConsRate cons_rhs(const ConsState& s, const PressureLaw& law, const DampingLaw& dl,
                  Limiter limiter = Limiter::Minmod);

/// Sixth-difference filter term -(eps * c / dx) * (dx^6 / 64) (D+D-)^3 f
/// with zero-gradient ghost nodes; c is the reference wave speed.
Field high_order_dissipation(const Field& f, double eps, double c);

/// Max characteristic speed max_i(|u_i| + c_i); throws HyperbolicityLoss.
double max_char_speed(const SymState& s, const TransformParams& tp);
double max_char_speed(const ConsState& s, const PressureLaw& law);

double cfl_dt(const SymState& s, const TransformParams& tp, const SolverConfig& cfg);
double cfl_dt(const ConsState& s, const PressureLaw& law, const SolverConfig& cfg);

SymState advanced(const SymState& s, const SymRate& k, double h);
ConsState advanced(const ConsState& s, const ConsRate& k, double h);
void accumulate(SymRate& acc, const SymRate& k, double w);
void accumulate(ConsRate& acc, const ConsRate& k, double w);
void require_finite(const SymState& s);
void require_finite(const ConsState& s);

/// Classical four-stage Runge-Kutta step; rhs is evaluated at the stage
/// times t, t + dt/2, t + dt through the state's clock.
template <class State, class Rhs>
State rk4_step(const State& s, double dt, Rhs&& rhs) {
  auto k1 = rhs(s);
  auto k2 = rhs(advanced(s, k1, 0.5 * dt));
  auto k3 = rhs(advanced(s, k2, 0.5 * dt));
  auto k4 = rhs(advanced(s, k3, dt));
  accumulate(k1, k2, 2.0);
  accumulate(k1, k3, 2.0);
  accumulate(k1, k4, 1.0);
  State out = advanced(s, k1, dt / 6.0);
  out.t = s.t + dt;
  require_finite(out);
  return out;
}

/// Three consecutive states separated by the same step.
struct SymTriple {
  SymState prev;
  SymState mid;
  SymState next;
};

enum class RunStatus { CompletedGlobal, BlowupDetected, Error };
std::string_view to_string(RunStatus status) noexcept;

struct RunResult {
  RunStatus status = RunStatus::CompletedGlobal;
  BlowupStatus blowup;
  std::string error;
  std::size_t steps = 0;
  SymState final_state;
  std::optional<ConsState> final_cons;
  std::vector<SymState> snapshots;
  std::vector<SymTriple> triples;
};

struct RunSetup {
  TransformParams tp;
  DampingLaw damping;
  Nonlinearity nonlinearity = Nonlinearity::Full;
  BlowupThresholds thresholds;
};

/// Called at step 0, every snapshot_stride steps, and at the final state
/// (also when a run stops on blowup). dt is the step that produced the
/// state (0 at t = 0).
using SnapshotObserver = std::function<void(const SymState& state, double dt)>;

RunResult run(const SolverConfig& cfg, Formulation formulation, const RunSetup& setup,
              const InitialStates& initial, const SnapshotObserver& observer = {});

}  // namespace dampeuler
