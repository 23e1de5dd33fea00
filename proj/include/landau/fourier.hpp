#pragma once

// Finite Fourier series on the unit circle and the unit torus. These carry the
// magnetic field, the gauge potentials and every p-periodic coefficient
// function downstream; derivatives, antiderivatives and products are exact.

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace landau {

using Complex = std::complex<double>;

/// sum_k c_k exp(2 pi i k t) with finitely many nonzero c_k.
class Series1 {
 public:
  using Map = std::map<int, Complex>;

  Series1() = default;
  explicit Series1(Map coeffs);

  /// Constant series.
  static Series1 constant(Complex c);
  /// a cos(2 pi q t) + b sin(2 pi q t).
  static Series1 trig(int q, double a, double b);

  const Map& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  void add(int k, Complex c);
  bool empty() const { return coeffs_.empty(); }
  int bandwidth() const;

  Complex operator()(double t) const;
  double real_value(double t) const { return (*this)(t).real(); }

  Series1 derivative() const;
  /// Antiderivative with zero mean. Requires a vanishing constant mode.
  Series1 antiderivative() const;
  Series1 shifted(double dt) const;  // t -> f(t + dt)

  bool is_real(double tol = 1e-14) const;
  /// max |f| sampled on a grid fine enough for the bandwidth.
  double max_abs() const;

  Series1& operator+=(const Series1& other);
  Series1& operator*=(Complex s);
  friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
  friend Series1 operator*(Series1 a, Complex s) { return a *= s; }
  friend Series1 operator*(Complex s, Series1 a) { return a *= s; }
  /// Product of two series (coefficient convolution).
  friend Series1 operator*(const Series1& a, const Series1& b);

  /// Drop coefficients with |c| <= tol.
  Series1 pruned(double tol = 0.0) const;

 private:
  Map coeffs_;
};

/// sum_{j,k} c_{jk} exp(2 pi i (j x + k y)).
class Series2 {
 public:
  using Key = std::pair<int, int>;
  using Map = std::map<Key, Complex>;

  Series2() = default;
  explicit Series2(Map coeffs);

  static Series2 constant(Complex c);

  const Map& coeffs() const { return coeffs_; }
  Complex coeff(int j, int k) const;
  void add(int j, int k, Complex c);
  bool empty() const { return coeffs_.empty(); }
  int x_bandwidth() const;
  int y_bandwidth() const;

  Complex operator()(double x, double y) const;
  double real_value(double x, double y) const { return (*this)(x, y).real(); }

  /// j-th Fourier coefficient in x as a function of y.
  Series1 x_mode(int j) const;
  /// Values of j with a nonzero x_mode(j).
  std::vector<int> x_modes() const;
  /// x-average, i.e. x_mode(0).
  Series1 x_average() const { return x_mode(0); }

  Series2 d_dx() const;
  Series2 d_dy() const;

  bool is_hermitian(double tol = 1e-14) const;
  double max_abs() const;

  Series2& operator+=(const Series2& other);
  Series2& operator*=(Complex s);
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator*(Series2 a, Complex s) { return a *= s; }
  friend Series2 operator*(Complex s, Series2 a) { return a *= s; }
  friend Series2 operator*(const Series2& a, const Series2& b);

  Series2 pruned(double tol = 0.0) const;

 private:
  Map coeffs_;
};

/// Embed a function of y as a Series2 with only j = 0 modes.
Series2 lift_y(const Series1& f);
/// Embed a function of x as a Series2 with only k = 0 modes.
Series2 lift_x(const Series1& f);

/// Largest |a_k - b_k| over the union of supports.
double max_coeff_difference(const Series1& a, const Series1& b);
double max_coeff_difference(const Series2& a, const Series2& b);

}  // namespace landau
