#pragma once

/**
 * Run configuration, read from a small TOML-style file:
 *
 *   # comment
 *   [law]
 *   kind = "logarithmic"     # polytropic | chaplygin | logarithmic
 *   K1 = 1.0
 *   [damping]
 *   mu = 3.0
 *   [initial]
 *   epsilon = 0.05
 *
 * Sections: law, damping, initial, grid, solver, diagnostics, output.
 * Every key is optional; omitted keys take the defaults of RunConfig.
 */

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dampeuler/blowup.hpp"
#include "dampeuler/dynamics.hpp"
#include "dampeuler/eos.hpp"
#include "dampeuler/initial_data.hpp"

namespace dampeuler {

struct GridConfig {
  double x_min = -60.0;
  double x_max = 60.0;
  std::size_t n = 2000;

  [[nodiscard]] Grid1D build() const { return {x_min, x_max, n}; }
};

struct DiagnosticsConfig {
  int m = 3;
  BlowupThresholds thresholds;
  double support_tol = 1e-12;
};

struct OutputConfig {
  std::filesystem::path directory = "dampeuler-out";
  bool csv = true;
  bool svg = true;
};

struct RunConfig {
  PressureLaw law = PressureLaw::logarithmic(1.0);
  DampingLaw damping;
  InitialData initial;
  GridConfig grid;
  SolverConfig solver;
  Formulation formulation = Formulation::Symmetric;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
  /// Non-fatal remarks produced by validation.
  std::vector<std::string> notices;
};

/// Parses config text; relative table paths resolve against base_dir.
/// Throws ParseError (with line number) or ValidationError.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {},
                       std::string_view origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Checks cross-field invariants (grid contains the support, positive
/// initial density, parameter ranges) and refreshes cfg.notices.
void validate(RunConfig& cfg);

/// Builds a law from a kind and either an exponent or an index gamma.
PressureLaw make_law(LawKind kind, std::optional<double> exponent, std::optional<double> gamma,
                     double k1, double offset);

}  // namespace dampeuler
