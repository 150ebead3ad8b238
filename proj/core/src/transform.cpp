#include "dampeuler/transform.hpp"

#include <cmath>
#include <string>

#include "dampeuler/error.hpp"

namespace dampeuler {

TransformParams::TransformParams(PressureLaw law)
    : law_(law), sigma_(std::sqrt(law.k1())) {}

// Both directions are written with expm1/log1p so that v stays accurate
// for densities close to the background.

double rho_to_v(const TransformParams& tp, double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::NonPositiveDensity,
                "density must be positive, got " + std::to_string(rho));
  }
  const double a = tp.exponent();
  return 2.0 * tp.sigma() / a * std::expm1(0.5 * a * std::log(rho));
}

double v_to_rho(const TransformParams& tp, double v) {
  const double a = tp.exponent();
  const double z = a * v / (2.0 * tp.sigma());
  if (!(1.0 + z > 0.0)) {
    throw Error(ErrorCode::InvalidVRange,
                "v = " + std::to_string(v) + " is outside the transform range");
  }
  return std::exp(2.0 / a * std::log1p(z));
}

CharSpeeds char_speeds(double v, double u, const TransformParams& tp) {
  const double c = effective_sound_speed(tp, v);
  if (!(c > 0.0)) {
    throw Error(ErrorCode::HyperbolicityLoss,
                "effective sound speed " + std::to_string(c) + " is not positive");
  }
  return {u - c, u + c};
}

SymState map_cons_to_sym(const ConsState& cs, const TransformParams& tp) {
  const Grid1D& g = cs.rho.grid();
  SymState out{Field(g), Field(g), cs.t};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double rho = cs.rho[i];
    if (!(rho > 0.0)) {
      throw Error(ErrorCode::NonPositiveDensity, "density must be positive", i);
    }
    out.v[i] = rho_to_v(tp, rho);
    out.u[i] = cs.m[i] / rho;
  }
  return out;
}

ConsState map_sym_to_cons(const SymState& ss, const TransformParams& tp) {
  const Grid1D& g = ss.v.grid();
  ConsState out{Field(g), Field(g), ss.t};
  for (std::size_t i = 0; i < g.size(); ++i) {
    try {
      out.rho[i] = v_to_rho(tp, ss.v[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "v outside transform range", i);
    }
    out.m[i] = out.rho[i] * ss.u[i];
  }
  return out;
}

}  // namespace dampeuler
