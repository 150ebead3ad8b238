#include "dampeuler/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dampeuler/error.hpp"

namespace dampeuler {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n), dx_(0.0) {
  if (n < kMinNodes) {
    throw Error(ErrorCode::GridTooSmall,
                "grid needs at least " + std::to_string(kMinNodes) + " nodes, got " +
                    std::to_string(n));
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw Error(ErrorCode::InvalidArgument, "grid requires finite x_min < x_max");
  }
  dx_ = (x_max - x_min) / static_cast<double>(n - 1);
}

Field::Field(const Grid1D& grid, double fill) : grid_(grid), values_(grid.size(), fill) {
  if (!std::isfinite(fill)) throw Error(ErrorCode::NonFiniteValue, "fill value is not finite");
}

Field::Field(const Grid1D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match grid size");
  }
  require_finite();
}

double Field::max_abs() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

void Field::require_finite() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::NonFiniteValue, "field value is not finite", i);
    }
  }
}

Field& Field::operator+=(const Field& other) { return add_scaled(1.0, other); }

Field& Field::operator-=(const Field& other) { return add_scaled(-1.0, other); }

Field& Field::operator*=(double a) noexcept {
  for (double& x : values_) x *= a;
  return *this;
}

Field& Field::add_scaled(double a, const Field& other) {
  if (other.size() != size()) {
    throw Error(ErrorCode::InvalidArgument, "field size mismatch");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * other.values_[i];
  return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double a, Field f) { return f *= a; }

Field hadamard(const Field& a, const Field& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "field size mismatch");
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double bump_profile(double x, double radius) {
  const double s = x / radius;
  const double q = 1.0 - s * s;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

double bump_profile_derivative(double x, double radius) {
  const double s = x / radius;
  const double q = 1.0 - s * s;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q) * (-2.0 * s / radius) / (q * q);
}

namespace {

void first_derivative(std::span<const double> f, std::span<double> out, double dx) {
  const std::size_t n = f.size();
  const double c = 1.0 / (12.0 * dx);
  out[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  out[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  }
  out[n - 2] = c * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] -
                    f[n - 5]);
  out[n - 1] = c * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
                    16.0 * f[n - 4] + 3.0 * f[n - 5]);
}

}  // namespace

Field derivative(const Field& f, int k) {
  if (k < 0 || k > 4) {
    throw Error(ErrorCode::InvalidArgument, "derivative order must be in [0, 4]");
  }
  if (f.size() < 5) throw Error(ErrorCode::GridTooSmall, "derivative stencil needs 5 nodes");
  Field current = f;
  Field next(f.grid());
  for (int pass = 0; pass < k; ++pass) {
    first_derivative(current.values(), next.values(), f.grid().dx());
    std::swap(current, next);
  }
  return current;
}

Field central_derivative(const Field& f) {
  const std::size_t n = f.size();
  const auto v = f.values();
  const auto last = static_cast<std::ptrdiff_t>(n) - 1;
  const auto at = [&](std::ptrdiff_t j) {
    return v[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(j, 0, last))];
  };
  const double c = 1.0 / (12.0 * f.grid().dx());
  Field out(f.grid());
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = c * (8.0 * (v[i + 1] - v[i - 1]) - (v[i + 2] - v[i - 2]));
  }
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, n - 2, n - 1}) {
    const auto j = static_cast<std::ptrdiff_t>(i);
    out[i] = c * (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2)));
  }
  return out;
}

double l2_norm_sq(const Field& f) {
  const auto v = f.values();
  const std::size_t n = v.size();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) sum += v[i] * v[i];
  sum += 0.5 * (v[0] * v[0] + v[n - 1] * v[n - 1]);
  return sum * f.grid().dx();
}

double sobolev_norm_sq(const Field& f, int m) {
  if (m < 0 || m > 3) throw Error(ErrorCode::InvalidArgument, "Sobolev order must be in [0, 3]");
  double total = l2_norm_sq(f);
  Field d = f;
  for (int k = 1; k <= m; ++k) {
    d = derivative(d, 1);
    total += l2_norm_sq(d);
  }
  return total;
}

}  // namespace dampeuler
