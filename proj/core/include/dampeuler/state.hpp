#pragma once

#include "dampeuler/grid.hpp"

namespace dampeuler {

/// Unknowns of the symmetric formulation: transformed density variable v
/// and velocity u.
struct SymState {
  Field v;
  Field u;
  double t = 0.0;
};

/// Unknowns of the conservative formulation: density rho and momentum m = rho u.
struct ConsState {
  Field rho;
  Field m;
  double t = 0.0;
};

/// Background density; the transform is normalized so that v = 0 there.
inline constexpr double kBackgroundDensity = 1.0;

}  // namespace dampeuler
