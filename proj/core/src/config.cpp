#include "dampeuler/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dampeuler/error.hpp"

namespace dampeuler {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

class Reader {
 public:
  Reader(std::string_view origin, const Entry& e) : origin_(origin), e_(e) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, std::string(origin_) + ":" + std::to_string(e_.line) +
                                           ": [" + e_.section + "] " + e_.key + ": " + what);
  }

  double number() const {
    double out = 0.0;
    const std::string& v = e_.value;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail("expected a number, got '" + v + "'");
    return out;
  }

  std::size_t count() const {
    const double x = number();
    if (x < 0.0 || x != static_cast<double>(static_cast<std::size_t>(x))) {
      fail("expected a non-negative integer");
    }
    return static_cast<std::size_t>(x);
  }

  bool boolean() const {
    const std::string v = lower(e_.value);
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    fail("expected true/false");
  }

  const std::string& text() const { return e_.value; }

 private:
  std::string_view origin_;
  const Entry& e_;
};

std::string unquote(const std::string& raw) {
  if (raw.size() >= 2 && (raw.front() == '"' || raw.front() == '\'') && raw.back() == raw.front()) {
    return raw.substr(1, raw.size() - 2);
  }
  return raw;
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::vector<Entry> tokenize(std::string_view text, std::string_view origin) {
  std::vector<Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::ParseError, where + "unterminated section");
      section = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, where + "expected key = value");
    Entry e{section, lower(trim(std::string_view(line).substr(0, eq))),
            unquote(trim(std::string_view(line).substr(eq + 1))), lineno};
    if (e.key.empty()) throw Error(ErrorCode::ParseError, where + "empty key");
    if (section.empty()) throw Error(ErrorCode::ParseError, where + "key outside of a section");
    entries.push_back(std::move(e));
  }
  return entries;
}

Profile parse_profile(const Reader& r) {
  const std::string v = lower(r.text());
  if (v == "zero" || v == "none") return {ProfileKind::Zero, {}};
  if (v == "bump") return {ProfileKind::Bump, {}};
  if (v == "bump_derivative") return {ProfileKind::BumpDerivative, {}};
  if (v == "table") return {ProfileKind::Table, {}};
  r.fail("unknown profile '" + r.text() + "'");
}

}  // namespace

PressureLaw make_law(LawKind kind, std::optional<double> exponent, std::optional<double> gamma,
                     double k1, double offset) {
  std::optional<double> from_gamma;
  if (gamma) {
    switch (kind) {
      case LawKind::Polytropic: from_gamma = *gamma - 1.0; break;
      case LawKind::Chaplygin: from_gamma = -*gamma - 1.0; break;
      case LawKind::Logarithmic:
        throw Error(ErrorCode::ValidationError, "gamma is not defined for the logarithmic law");
    }
  }
  if (exponent && from_gamma && std::abs(*exponent - *from_gamma) > 1e-12) {
    throw Error(ErrorCode::ValidationError, "law exponent A and gamma are inconsistent");
  }
  double a = -1.0;
  if (from_gamma) {
    a = *from_gamma;
  } else if (exponent) {
    a = *exponent;
  } else if (kind == LawKind::Polytropic) {
    a = 1.0;
  } else if (kind == LawKind::Chaplygin) {
    a = -2.0;
  }
  return {kind, a, k1, offset};
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                       std::string_view origin) {
  RunConfig cfg;
  LawKind kind = LawKind::Logarithmic;
  std::optional<double> exponent;
  std::optional<double> gamma;
  double k1 = 1.0;
  double offset = 0.0;
  std::optional<std::filesystem::path> rho_table;
  std::optional<std::filesystem::path> u_table;

  for (const Entry& e : tokenize(text, origin)) {
    const Reader r(origin, e);
    const std::string& s = e.section;
    const std::string& k = e.key;
    if (s == "law") {
      if (k == "kind") {
        try {
          kind = parse_law_kind(lower(r.text()));
        } catch (const Error&) {
          r.fail("unknown law '" + r.text() + "'");
        }
      } else if (k == "a" || k == "exponent") {
        exponent = r.number();
      } else if (k == "gamma") {
        gamma = r.number();
      } else if (k == "k1") {
        k1 = r.number();
      } else if (k == "k" || k == "offset") {
        offset = r.number();
      } else {
        r.fail("unknown key");
      }
    } else if (s == "damping") {
      if (k == "mu") cfg.damping.mu = r.number();
      else if (k == "lambda") cfg.damping.lambda = r.number();
      else r.fail("unknown key");
    } else if (s == "initial") {
      if (k == "epsilon") cfg.initial.epsilon = r.number();
      else if (k == "radius" || k == "r") cfg.initial.radius = r.number();
      else if (k == "rho_profile") cfg.initial.rho_profile = parse_profile(r);
      else if (k == "u_profile") cfg.initial.u_profile = parse_profile(r);
      else if (k == "rho_table") rho_table = r.text();
      else if (k == "u_table") u_table = r.text();
      else r.fail("unknown key");
    } else if (s == "grid") {
      if (k == "x_min") cfg.grid.x_min = r.number();
      else if (k == "x_max") cfg.grid.x_max = r.number();
      else if (k == "n") cfg.grid.n = r.count();
      else r.fail("unknown key");
    } else if (s == "solver") {
      if (k == "cfl") cfg.solver.cfl = r.number();
      else if (k == "t_end") cfg.solver.t_end = r.number();
      else if (k == "snapshot_stride") cfg.solver.snapshot_stride = r.count();
      else if (k == "dt") cfg.solver.fixed_dt = r.number();
      else if (k == "dissipation") cfg.solver.dissipation = r.number();
      else if (k == "max_steps") cfg.solver.max_steps = r.count();
      else if (k == "limiter") {
        try {
          cfg.solver.limiter = parse_limiter(lower(r.text()));
        } catch (const Error&) {
          r.fail("unknown limiter '" + r.text() + "'");
        }
      } else if (k == "formulation") {
        try {
          cfg.formulation = parse_formulation(lower(r.text()));
        } catch (const Error&) {
          r.fail("unknown formulation '" + r.text() + "'");
        }
      } else {
        r.fail("unknown key");
      }
    } else if (s == "diagnostics") {
      if (k == "m") cfg.diagnostics.m = static_cast<int>(r.count());
      else if (k == "gradient_threshold") cfg.diagnostics.thresholds.gradient = r.number();
      else if (k == "vacuum_threshold") cfg.diagnostics.thresholds.vacuum_density = r.number();
      else if (k == "support_tol") cfg.diagnostics.support_tol = r.number();
      else r.fail("unknown key");
    } else if (s == "output") {
      if (k == "directory") cfg.output.directory = r.text();
      else if (k == "csv") cfg.output.csv = r.boolean();
      else if (k == "svg") cfg.output.svg = r.boolean();
      else r.fail("unknown key");
    } else {
      r.fail("unknown section");
    }
  }

  cfg.law = make_law(kind, exponent, gamma, k1, offset);
  const auto resolve = [&](const std::filesystem::path& p) {
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  if (rho_table) cfg.initial.rho_profile = load_profile_table(resolve(*rho_table));
  if (u_table) cfg.initial.u_profile = load_profile_table(resolve(*u_table));
  if (cfg.initial.rho_profile.kind == ProfileKind::Table && cfg.initial.rho_profile.table.empty()) {
    throw Error(ErrorCode::ValidationError, "rho_profile = table requires rho_table");
  }
  if (cfg.initial.u_profile.kind == ProfileKind::Table && cfg.initial.u_profile.table.empty()) {
    throw Error(ErrorCode::ValidationError, "u_profile = table requires u_table");
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path(), path.string());
}

void validate(RunConfig& cfg) {
  cfg.notices.clear();
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::ValidationError, what); };

  cfg.damping.validate();
  cfg.solver.validate();
  if (cfg.diagnostics.m < 1 || cfg.diagnostics.m > 4) fail("diagnostics.m must be in [1, 4]");
  if (!(cfg.diagnostics.support_tol > 0.0)) fail("diagnostics.support_tol must be > 0");
  if (!(cfg.diagnostics.thresholds.gradient > 0.0)) fail("gradient_threshold must be > 0");
  if (!(cfg.diagnostics.thresholds.vacuum_density > 0.0)) fail("vacuum_threshold must be > 0");
  if (!(cfg.initial.epsilon >= 0.0)) fail("initial.epsilon must be >= 0");
  if (!(cfg.initial.radius > 0.0)) fail("initial.radius must be > 0");

  const TransformParams tp(cfg.law);
  try {
    const Grid1D grid = cfg.grid.build();
    (void)make_initial(cfg.initial, grid, tp);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NonPositiveDensity:
      case ErrorCode::SupportExceedsDomain:
      case ErrorCode::GridTooSmall:
      case ErrorCode::InvalidVRange:
      case ErrorCode::InvalidArgument:
        throw Error(ErrorCode::ValidationError, e.what());
      default:
        throw;
    }
  }

  if (cfg.diagnostics.m < 3) {
    cfg.notices.push_back("warning: m = " + std::to_string(cfg.diagnostics.m) +
                          " is below 3, the Sobolev order the energy bound is stated for");
  }
  if (cfg.damping.lambda == 1.0 && cfg.damping.mu <= 2.0) {
    cfg.notices.push_back(
        "notice: mu <= 2 with lambda = 1 is outside the regime (mu > 2) where small-data "
        "global existence is known");
  }
  const double cone = cfg.initial.radius + cfg.solver.t_end * 1.05;
  if (cone > std::min(-cfg.grid.x_min, cfg.grid.x_max)) {
    cfg.notices.push_back("warning: the characteristic cone may reach the domain boundary "
                          "before t_end; enlarge the grid");
  }
}

}  // namespace dampeuler
