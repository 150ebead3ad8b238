#pragma once

/**
 * Barotropic pressure laws p(rho) whose derivative is a pure power,
 *
 *   p'(rho) = K1 * rho^A,
 *
 * which integrates to
 *
 *   p(rho) = K1/(A+1) * rho^(A+1) + K   (A != -1)
 *   p(rho) = K1 * ln(rho) + K           (A == -1)
 *
 * Three families are supported:
 *   - Polytropic (gamma law), A > 0, gamma = A + 1 > 1
 *   - Generalized Chaplygin gas, -2 <= A < -1, gamma = -A - 1 in (0, 1]
 *   - Logarithmic, A = -1 exactly
 *
 * Vacuum (rho <= 0) is never admitted; every evaluation rejects it.
 */

#include <string_view>

namespace dampeuler {

enum class LawKind { Polytropic, Chaplygin, Logarithmic };

std::string_view to_string(LawKind kind) noexcept;
LawKind parse_law_kind(std::string_view name);

class PressureLaw {
 public:
  /// Validates the exponent range for the chosen family; throws
  /// Error(ValidationError) on violation.
  PressureLaw(LawKind kind, double exponent, double k1, double offset = 0.0);

  static PressureLaw polytropic_gamma(double gamma, double k1, double offset = 0.0);
  static PressureLaw chaplygin_gamma(double gamma, double k1, double offset = 0.0);
  static PressureLaw logarithmic(double k1, double offset = 0.0);

  [[nodiscard]] LawKind kind() const noexcept { return kind_; }
  /// The exponent A in p'(rho) = K1 rho^A.
  [[nodiscard]] double exponent() const noexcept { return exponent_; }
  [[nodiscard]] double k1() const noexcept { return k1_; }
  [[nodiscard]] double offset() const noexcept { return offset_; }
  /// Adiabatic-type index: A+1 for polytropic, -A-1 for Chaplygin, 0 for log.
  [[nodiscard]] double gamma() const noexcept;

 private:
  LawKind kind_;
  double exponent_;
  double k1_;
  double offset_;
};

double pressure(const PressureLaw& law, double rho);
double dpressure(const PressureLaw& law, double rho);
double sound_speed(const PressureLaw& law, double rho);

}  // namespace dampeuler
