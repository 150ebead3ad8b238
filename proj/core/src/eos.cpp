#include "dampeuler/eos.hpp"

#include <cmath>
#include <string>

#include "dampeuler/error.hpp"

namespace dampeuler {

namespace {

void require_density(double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::NonPositiveDensity,
                "density must be positive, got " + std::to_string(rho));
  }
}

}  // namespace

std::string_view to_string(LawKind kind) noexcept {
  switch (kind) {
    case LawKind::Polytropic: return "polytropic";
    case LawKind::Chaplygin: return "chaplygin";
    case LawKind::Logarithmic: return "logarithmic";
  }
  return "unknown";
}

LawKind parse_law_kind(std::string_view name) {
  if (name == "polytropic" || name == "gamma") return LawKind::Polytropic;
  if (name == "chaplygin" || name == "gcg") return LawKind::Chaplygin;
  if (name == "logarithmic" || name == "log") return LawKind::Logarithmic;
  throw Error(ErrorCode::ValidationError, "unknown pressure law '" + std::string(name) + "'");
}

PressureLaw::PressureLaw(LawKind kind, double exponent, double k1, double offset)
    : kind_(kind), exponent_(exponent), k1_(k1), offset_(offset) {
  if (!(k1 > 0.0) || !std::isfinite(k1)) {
    throw Error(ErrorCode::ValidationError, "K1 must be positive and finite");
  }
  if (!std::isfinite(exponent) || !std::isfinite(offset)) {
    throw Error(ErrorCode::ValidationError, "law parameters must be finite");
  }
  switch (kind) {
    case LawKind::Polytropic:
      if (!(exponent > 0.0)) {
        throw Error(ErrorCode::ValidationError, "polytropic law requires A > 0 (gamma > 1)");
      }
      break;
    case LawKind::Chaplygin:
      if (!(exponent >= -2.0 && exponent < -1.0)) {
        throw Error(ErrorCode::ValidationError,
                    "Chaplygin law requires -2 <= A < -1 (0 < gamma <= 1)");
      }
      break;
    case LawKind::Logarithmic:
      if (exponent != -1.0) {
        throw Error(ErrorCode::ValidationError, "logarithmic law requires A = -1");
      }
      break;
  }
}

PressureLaw PressureLaw::polytropic_gamma(double gamma, double k1, double offset) {
  return {LawKind::Polytropic, gamma - 1.0, k1, offset};
}

PressureLaw PressureLaw::chaplygin_gamma(double gamma, double k1, double offset) {
  return {LawKind::Chaplygin, -gamma - 1.0, k1, offset};
}

PressureLaw PressureLaw::logarithmic(double k1, double offset) {
  return {LawKind::Logarithmic, -1.0, k1, offset};
}

double PressureLaw::gamma() const noexcept {
  switch (kind_) {
    case LawKind::Polytropic: return exponent_ + 1.0;
    case LawKind::Chaplygin: return -exponent_ - 1.0;
    case LawKind::Logarithmic: return 0.0;
  }
  return 0.0;
}

double pressure(const PressureLaw& law, double rho) {
  require_density(rho);
  if (law.kind() == LawKind::Logarithmic) {
    return law.k1() * std::log(rho) + law.offset();
  }
  const double a1 = law.exponent() + 1.0;
  return law.k1() / a1 * std::pow(rho, a1) + law.offset();
}

double dpressure(const PressureLaw& law, double rho) {
  require_density(rho);
  return law.k1() * std::pow(rho, law.exponent());
}

double sound_speed(const PressureLaw& law, double rho) {
  return std::sqrt(dpressure(law, rho));
}

}  // namespace dampeuler
