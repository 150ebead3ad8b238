#pragma once

/**
 * Change of variables between density and the symmetrizing variable
 *
 *   v = (2/A) (sqrt(p'(rho)) - sigma),   sigma = sqrt(K1),
 *
 * normalized so that v = 0 at the background density rho = 1. In (v, u)
 * the barotropic Euler system is symmetric hyperbolic with characteristic
 * speeds u +/- (sigma + (A/2) v), and sigma + (A/2) v is exactly the local
 * sound speed.
 */

#include "dampeuler/eos.hpp"
#include "dampeuler/state.hpp"

namespace dampeuler {

class TransformParams {
 public:
  explicit TransformParams(PressureLaw law);

  [[nodiscard]] const PressureLaw& law() const noexcept { return law_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] double exponent() const noexcept { return law_.exponent(); }
  /// A/2, the coefficient of the quadratic terms in the symmetric system.
  [[nodiscard]] double half_exponent() const noexcept { return 0.5 * law_.exponent(); }

 private:
  PressureLaw law_;
  double sigma_;
};

double rho_to_v(const TransformParams& tp, double rho);
/// Throws Error(InvalidVRange) when 1 + A v / (2 sigma) <= 0.
double v_to_rho(const TransformParams& tp, double v);

/// sigma + (A/2) v without any validity check.
[[nodiscard]] inline double effective_sound_speed(const TransformParams& tp, double v) noexcept {
  return tp.sigma() + tp.half_exponent() * v;
}

struct CharSpeeds {
  double minus;
  double plus;
};

/// Eigenvalues u -/+ (sigma + (A/2) v); throws HyperbolicityLoss when the
/// effective sound speed is not positive.
CharSpeeds char_speeds(double v, double u, const TransformParams& tp);

SymState map_cons_to_sym(const ConsState& cs, const TransformParams& tp);
ConsState map_sym_to_cons(const SymState& ss, const TransformParams& tp);

}  // namespace dampeuler
