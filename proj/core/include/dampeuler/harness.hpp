#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dampeuler/config.hpp"
#include "dampeuler/diagnostics.hpp"

namespace dampeuler {

/// Environment variable that, when set and non-empty, replaces
/// output.directory of every loaded config.
inline constexpr const char* kOutputDirEnv = "DAMPEULER_OUTPUT_DIR";

enum ExitCode : int { kExitGlobal = 0, kExitError = 1, kExitBlowup = 2 };

int exit_code(RunStatus status) noexcept;

struct RunReport {
  RunStatus status = RunStatus::CompletedGlobal;
  BlowupStatus blowup;
  std::string error;
  std::size_t steps = 0;
  double final_time = 0.0;
  double wall_seconds = 0.0;
  EnergyReport energy;
  std::vector<DiagnosticRow> rows;
  double fps_margin = 0.0;
  bool energy_monotone = true;
};

/// Runs a validated config with full diagnostics; never throws for
/// solver failures (they land in status/error).
RunReport execute(const RunConfig& cfg);

/// summary.json contents: schema version, status, blowup, energy,
/// fps margin, wall time and a config echo.
std::string summary_json(const RunConfig& cfg, const RunReport& report);

/// Applies the output-directory environment override, if any.
void apply_env_overrides(RunConfig& cfg);

/// Runs and writes run.csv, summary.json and energy.svg into the output
/// directory. Returns 0 / 2 / 1 for global / blowup / error.
int cmd_run(const RunConfig& cfg, std::ostream& log);

struct SweepAxis {
  std::string key;  ///< mu, lambda, epsilon or law
  std::vector<std::string> values;
};

/// Parses "key=v1,v2,..." specs. Throws ValidationError on unknown keys
/// or empty lists.
std::vector<SweepAxis> parse_sweep_axes(const std::vector<std::string>& specs);

struct SweepOptions {
  std::size_t max_runs = 256;
  std::size_t workers = 1;
};

struct SweepRow {
  std::size_t index = 0;
  std::string law;
  double gamma = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double epsilon = 0.0;
  RunStatus status = RunStatus::Error;
  BlowupKind blowup_kind = BlowupKind::None;
  double blowup_time = -1.0;
  double final_ratio = 0.0;
  double sup_ratio = 0.0;
  double fps_margin = 0.0;
  std::size_t steps = 0;
  std::string error;
};

/// Cartesian product in axis order, last axis fastest. Rows come back in
/// that order regardless of the worker count.
std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                                const SweepOptions& options);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Writes sweep.csv; exit 0 when every row ran (blowups included), 1
/// when any row errored.
int cmd_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
              const SweepOptions& options, std::ostream& log);

}  // namespace dampeuler
