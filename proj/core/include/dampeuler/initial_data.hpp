#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "dampeuler/state.hpp"
#include "dampeuler/transform.hpp"

namespace dampeuler {

enum class ProfileKind { Zero, Bump, BumpDerivative, Table };

/// Shape of a perturbation rho_0 or u_0, scaled to the support radius R.
/// Table profiles are linearly interpolated and vanish outside the table.
struct Profile {
  ProfileKind kind = ProfileKind::Bump;
  std::vector<std::pair<double, double>> table;

  [[nodiscard]] double operator()(double x, double radius) const;
};

/// Reads a two-column "x value" text table (blank lines and '#' comments
/// allowed, x strictly increasing).
Profile load_profile_table(const std::filesystem::path& path);

/// Perturbation of the rest state: rho = 1 + eps rho_0(x), u = eps u_0(x),
/// with rho_0, u_0 supported in |x| <= R.
struct InitialData {
  double epsilon = 0.05;
  double radius = 1.0;
  Profile rho_profile{ProfileKind::Bump, {}};
  Profile u_profile{ProfileKind::Zero, {}};
};

struct InitialStates {
  ConsState cons;
  SymState sym;
};

/// Throws SupportExceedsDomain when the grid does not strictly contain
/// [-R, R] (or a table profile is nonzero outside it), NonPositiveDensity
/// when 1 + eps rho_0 <= 0 at some node.
InitialStates make_initial(const InitialData& id, const Grid1D& grid, const TransformParams& tp);

}  // namespace dampeuler
