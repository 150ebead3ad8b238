#include "dampeuler/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "dampeuler/error.hpp"

namespace dampeuler {

double Profile::operator()(double x, double radius) const {
  switch (kind) {
    case ProfileKind::Zero: return 0.0;
    case ProfileKind::Bump: return bump_profile(x, radius);
    case ProfileKind::BumpDerivative: return radius * bump_profile_derivative(x, radius);
    case ProfileKind::Table: {
      if (table.empty() || x < table.front().first || x > table.back().first) return 0.0;
      auto hi = std::lower_bound(table.begin(), table.end(), x,
                                 [](const auto& p, double xv) { return p.first < xv; });
      if (hi == table.begin()) return hi->second;
      auto lo = std::prev(hi);
      const double w = (x - lo->first) / (hi->first - lo->first);
      return (1.0 - w) * lo->second + w * hi->second;
    }
  }
  return 0.0;
}

Profile load_profile_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open profile table " + path.string());
  Profile p{ProfileKind::Table, {}};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x = 0.0;
    double value = 0.0;
    if (!(ls >> x)) continue;
    if (!(ls >> value) || !std::isfinite(x) || !std::isfinite(value)) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    if (!p.table.empty() && !(x > p.table.back().first)) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(lineno) + ": x must increase");
    }
    p.table.emplace_back(x, value);
  }
  if (p.table.size() < 2) {
    throw Error(ErrorCode::ParseError, path.string() + ": table needs at least two rows");
  }
  return p;
}

namespace {

void check_table_support(const Profile& p, double radius) {
  if (p.kind != ProfileKind::Table) return;
  for (const auto& [x, value] : p.table) {
    if (value != 0.0 && std::abs(x) > radius) {
      throw Error(ErrorCode::SupportExceedsDomain,
                  "table profile is nonzero at x = " + std::to_string(x) + " outside |x| <= R");
    }
  }
}

}  // namespace

InitialStates make_initial(const InitialData& id, const Grid1D& grid, const TransformParams& tp) {
  if (!(id.radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "support radius must be > 0");
  if (!(id.epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be >= 0");
  if (!(grid.x_min() < -id.radius && grid.x_max() > id.radius)) {
    throw Error(ErrorCode::SupportExceedsDomain, "grid must strictly contain [-R, R]");
  }
  check_table_support(id.rho_profile, id.radius);
  check_table_support(id.u_profile, id.radius);

  ConsState cons{Field(grid), Field(grid), 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double rho = kBackgroundDensity + id.epsilon * id.rho_profile(x, id.radius);
    if (!(rho > 0.0)) {
      throw Error(ErrorCode::NonPositiveDensity, "initial density is not positive", i);
    }
    cons.rho[i] = rho;
    cons.m[i] = rho * id.epsilon * id.u_profile(x, id.radius);
  }
  cons.rho.require_finite();
  cons.m.require_finite();
  SymState sym = map_cons_to_sym(cons, tp);
  return {std::move(cons), std::move(sym)};
}

}  // namespace dampeuler
