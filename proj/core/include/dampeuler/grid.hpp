#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dampeuler {

/// Uniform nodal mesh on [x_min, x_max] with n >= 16 nodes.
class Grid1D {
 public:
  static constexpr std::size_t kMinNodes = 16;

  Grid1D(double x_min, double x_max, std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double x_min() const noexcept { return x_min_; }
  [[nodiscard]] double x_max() const noexcept { return x_max_; }
  [[nodiscard]] double dx() const noexcept { return dx_; }
  [[nodiscard]] double x(std::size_t i) const noexcept {
    return x_min_ + static_cast<double>(i) * dx_;
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double dx_;
};

/// Real nodal data on a Grid1D. Construction from explicit values rejects
/// NaN/Inf; in-place arithmetic does not re-check (call require_finite()).
class Field {
 public:
  explicit Field(const Grid1D& grid, double fill = 0.0);
  Field(const Grid1D& grid, std::vector<double> values);

  template <class Fn>
  static Field sample(const Grid1D& grid, Fn&& fn) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.x(i));
    return Field(grid, std::move(values));
  }

  [[nodiscard]] const Grid1D& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  [[nodiscard]] double max_abs() const noexcept;
  /// Throws Error(NonFiniteValue) naming the first bad node.
  void require_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double a) noexcept;
  /// this += a * other
  Field& add_scaled(double a, const Field& other);

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double a, Field f);
/// Pointwise product.
Field hadamard(const Field& a, const Field& b);

/// Smooth compactly supported bump: exp(1 - 1/(1 - (x/R)^2)) for |x| < R, else 0.
double bump_profile(double x, double radius);
/// d/dx of bump_profile.
double bump_profile_derivative(double x, double radius);

/// k-fold application of the five-point fourth-order first-derivative
/// stencil; the two nodes at each end use one-sided fourth-order stencils.
/// Requires 1 <= k <= 4 (k = 0 returns a copy).
Field derivative(const Field& f, int k = 1);

/// Five-point fourth-order first derivative with zero-gradient ghost
/// nodes (indices clamped to the grid). Exact on constants everywhere;
/// this is the operator the symmetric solver and the wave-identity
/// diagnostics share.
Field central_derivative(const Field& f);

/// Composite trapezoid approximation of the integral of f^2.
double l2_norm_sq(const Field& f);

/// Sum over k = 0..m of l2_norm_sq(derivative(f, k)); m <= 3.
double sobolev_norm_sq(const Field& f, int m);

}  // namespace dampeuler
