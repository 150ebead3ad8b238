#pragma once

/**
 * Programmatic acceptance suites. Each criterion runs at fixed desk-scale
 * settings and reports one pass/fail line.
 *
 *   1 transform    roundtrip and sound-speed identity for all laws
 *   2 energy       bounded, grid-stable energy ratio on the reference run
 *   3 equivalence  symmetric vs conservative solutions converge
 *   4 residual     damped-wave identity residual converges, 0 on background
 *   5 fps          support stays inside the characteristic cone
 *   6 blowup       undamped large data breaks down, damped small data does not
 *   7 kernels      stencils, quadrature, Sobolev norm, RK4 damping limit
 *   8 invariants   monotone E_m/L_m, quadratic Q
 */

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dampeuler {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  /// Extra measurements that do not affect the verdict.
  std::vector<std::string> info;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Fault injection: runs the reference configuration with the damping
  /// term sign reversed. The energy criterion must then fail.
  bool flip_damping_sign = false;
  /// When set, each result line is printed as soon as it is known.
  std::ostream* progress = nullptr;
};

/// transform, energy, equivalence, residual, fps, blowup, kernels,
/// invariants, all.
std::vector<std::string_view> acceptance_suites();

/// Criterion ids of a suite; throws InvalidArgument for unknown names.
std::vector<int> suite_criteria(std::string_view suite);

std::vector<CriterionResult> run_acceptance(std::string_view suite,
                                            const AcceptanceOptions& options = {});

std::string format_result(const CriterionResult& r);

/// Runs a suite and prints the table; 0 iff every criterion passed.
int cmd_check(std::string_view suite, std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace dampeuler
