#include "dampeuler/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dampeuler/error.hpp"

namespace dampeuler {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_run_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows) {
  out << "# schema: dampeuler-run v" << kRunCsvSchemaVersion << '\n';
  out << "t,e_inst,ell_inst,E_m,L_m,ratio,max_abs_vx,max_abs_ux,support_radius_v,"
         "support_radius_u,c_max,dt\n";
  for (const DiagnosticRow& r : rows) {
    const double cols[] = {r.t,          r.e_inst,     r.ell_inst,         r.energy,
                           r.dissipation, r.ratio,     r.max_abs_vx,       r.max_abs_ux,
                           r.support_radius_v, r.support_radius_u, r.c_max, r.dt};
    bool first = true;
    for (double c : cols) {
      if (!first) out << ',';
      out << format_double(c);
      first = false;
    }
    out << '\n';
  }
}

std::string render_svg(std::string_view title, const std::vector<double>& x,
                       const std::vector<Series>& series) {
  constexpr double width = 640.0;
  constexpr double panel = 180.0;
  constexpr double left = 70.0;
  constexpr double right = 20.0;
  constexpr double top = 30.0;
  constexpr double gap = 30.0;
  const double height = top + static_cast<double>(series.size()) * (panel + gap);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">"
      << title << "</text>\n";

  const auto finite_range = [](const std::vector<double>& v) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (double a : v) {
      if (std::isfinite(a)) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
    }
    if (!(lo <= hi)) return std::pair{0.0, 1.0};
    if (hi - lo < 1e-300) return std::pair{lo - 0.5, hi + 0.5};
    return std::pair{lo, hi};
  };
  const auto [x0, x1] = finite_range(x);
  const double pw = width - left - right;

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const double y_top = top + static_cast<double>(k) * (panel + gap);
    const auto [y0, y1] = finite_range(s.y);
    svg << "<rect x=\"" << left << "\" y=\"" << y_top << "\" width=\"" << pw << "\" height=\""
        << panel << "\" fill=\"none\" stroke=\"#888\"/>\n";
    svg << "<text x=\"" << left + 4 << "\" y=\"" << y_top + 14 << "\">" << s.label << "</text>\n";
    svg << "<text x=\"" << left - 4 << "\" y=\"" << y_top + 10
        << "\" text-anchor=\"end\">" << format_double(y1) << "</text>\n";
    svg << "<text x=\"" << left - 4 << "\" y=\"" << y_top + panel
        << "\" text-anchor=\"end\">" << format_double(y0) << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\" points=\"";
    const std::size_t n = std::min(x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(x[i]) || !std::isfinite(s.y[i])) continue;
      const double px = left + (x[i] - x0) / (x1 - x0) * pw;
      const double py = y_top + panel - (s.y[i] - y0) / (y1 - y0) * panel;
      svg << format_double(std::round(px * 100) / 100) << ','
          << format_double(std::round(py * 100) / 100) << ' ';
    }
    svg << "\"/>\n";
  }
  const double axis_y = top + static_cast<double>(series.size()) * (panel + gap) - gap + 14;
  svg << "<text x=\"" << left << "\" y=\"" << axis_y << "\">" << format_double(x0) << "</text>\n";
  svg << "<text x=\"" << width - right << "\" y=\"" << axis_y << "\" text-anchor=\"end\">"
      << format_double(x1) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace dampeuler
