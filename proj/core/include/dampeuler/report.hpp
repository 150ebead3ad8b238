#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dampeuler/diagnostics.hpp"

namespace dampeuler {

/// Version of the run.csv column layout. Bumped on any column change.
inline constexpr int kRunCsvSchemaVersion = 1;
inline constexpr int kSweepCsvSchemaVersion = 1;
inline constexpr int kSummarySchemaVersion = 1;

/// Shortest round-trip decimal form; identical input gives identical text.
std::string format_double(double x);

/// Writes "# schema: dampeuler-run v1" followed by a header and one line
/// per row.
void write_run_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows);

struct Series {
  std::string label;
  std::vector<double> y;
};

/// Stacked polyline panels sharing the abscissa x, one panel per series.
std::string render_svg(std::string_view title, const std::vector<double>& x,
                       const std::vector<Series>& series);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace dampeuler
