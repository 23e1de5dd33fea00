#include "landau/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace landau {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

int grid_for(int bandwidth) { return 64 * (bandwidth + 1); }

}  // namespace

Series1::Series1(Map coeffs) : coeffs_(std::move(coeffs)) {}

Series1 Series1::constant(Complex c) {
  Series1 s;
  s.add(0, c);
  return s;
}

Series1 Series1::trig(int q, double a, double b) {
  Series1 s;
  if (q == 0) {
    s.add(0, a);
    return s;
  }
  // a cos + b sin = (a - i b)/2 e^{+} + (a + i b)/2 e^{-}
  s.add(q, Complex(a, -b) / 2.0);
  s.add(-q, Complex(a, b) / 2.0);
  return s;
}

Complex Series1::coeff(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void Series1::add(int k, Complex c) {
  if (c == Complex{}) return;
  coeffs_[k] += c;
}

int Series1::bandwidth() const {
  int bw = 0;
  for (const auto& [k, c] : coeffs_) bw = std::max(bw, std::abs(k));
  return bw;
}

Complex Series1::operator()(double t) const {
  Complex sum{};
  for (const auto& [k, c] : coeffs_) sum += c * phase(kTwoPi * k * t);
  return sum;
}

Series1 Series1::derivative() const {
  Series1 out;
  for (const auto& [k, c] : coeffs_) {
    if (k != 0) out.add(k, c * Complex(0.0, kTwoPi * k));
  }
  return out;
}

Series1 Series1::antiderivative() const {
  Series1 out;
  for (const auto& [k, c] : coeffs_) {
    if (k != 0) out.add(k, c / Complex(0.0, kTwoPi * k));
  }
  return out;
}

Series1 Series1::shifted(double dt) const {
  Series1 out;
  for (const auto& [k, c] : coeffs_) out.add(k, c * phase(kTwoPi * k * dt));
  return out;
}

bool Series1::is_real(double tol) const {
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(c - std::conj(coeff(-k))) > tol * std::max(1.0, std::abs(c))) return false;
  }
  return true;
}

double Series1::max_abs() const {
  if (coeffs_.empty()) return 0.0;
  const int n = grid_for(bandwidth());
  double best = 0.0;
  for (int i = 0; i < n; ++i) best = std::max(best, std::abs((*this)(double(i) / n)));
  return best;
}

Series1& Series1::operator+=(const Series1& other) {
  for (const auto& [k, c] : other.coeffs_) add(k, c);
  return *this;
}

Series1& Series1::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

Series1 operator*(const Series1& a, const Series1& b) {
  Series1 out;
  for (const auto& [ka, ca] : a.coeffs_) {
    for (const auto& [kb, cb] : b.coeffs_) out.add(ka + kb, ca * cb);
  }
  return out;
}

Series1 Series1::pruned(double tol) const {
  Series1 out;
  for (const auto& [k, c] : coeffs_) {
    if (std::abs(c) > tol) out.coeffs_[k] = c;
  }
  return out;
}

Series2::Series2(Map coeffs) : coeffs_(std::move(coeffs)) {}

Series2 Series2::constant(Complex c) {
  Series2 s;
  s.add(0, 0, c);
  return s;
}

Complex Series2::coeff(int j, int k) const {
  const auto it = coeffs_.find({j, k});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void Series2::add(int j, int k, Complex c) {
  if (c == Complex{}) return;
  coeffs_[{j, k}] += c;
}

int Series2::x_bandwidth() const {
  int bw = 0;
  for (const auto& [key, c] : coeffs_) bw = std::max(bw, std::abs(key.first));
  return bw;
}

int Series2::y_bandwidth() const {
  int bw = 0;
  for (const auto& [key, c] : coeffs_) bw = std::max(bw, std::abs(key.second));
  return bw;
}

Complex Series2::operator()(double x, double y) const {
  Complex sum{};
  for (const auto& [key, c] : coeffs_) sum += c * phase(kTwoPi * (key.first * x + key.second * y));
  return sum;
}

Series1 Series2::x_mode(int j) const {
  Series1 out;
  for (const auto& [key, c] : coeffs_) {
    if (key.first == j) out.add(key.second, c);
  }
  return out;
}

std::vector<int> Series2::x_modes() const {
  std::vector<int> modes;
  for (const auto& [key, c] : coeffs_) {
    if (modes.empty() || modes.back() != key.first) modes.push_back(key.first);
  }
  return modes;
}

Series2 Series2::d_dx() const {
  Series2 out;
  for (const auto& [key, c] : coeffs_) out.add(key.first, key.second, c * Complex(0.0, kTwoPi * key.first));
  return out;
}

Series2 Series2::d_dy() const {
  Series2 out;
  for (const auto& [key, c] : coeffs_) out.add(key.first, key.second, c * Complex(0.0, kTwoPi * key.second));
  return out;
}

bool Series2::is_hermitian(double tol) const {
  for (const auto& [key, c] : coeffs_) {
    const Complex partner = std::conj(coeff(-key.first, -key.second));
    if (std::abs(c - partner) > tol * std::max(1.0, std::abs(c))) return false;
  }
  return true;
}

double Series2::max_abs() const {
  if (coeffs_.empty()) return 0.0;
  const int nx = grid_for(x_bandwidth());
  const int ny = grid_for(y_bandwidth());
  // Separable evaluation: for each x precompute the y-series.
  std::vector<int> modes = x_modes();
  std::vector<Series1> rows;
  rows.reserve(modes.size());
  for (int j : modes) rows.push_back(x_mode(j));
  std::vector<std::vector<Complex>> row_values(modes.size(), std::vector<Complex>(ny));
  for (std::size_t r = 0; r < modes.size(); ++r) {
    for (int iy = 0; iy < ny; ++iy) row_values[r][iy] = rows[r](double(iy) / ny);
  }
  double best = 0.0;
  for (int ix = 0; ix < nx; ++ix) {
    const double x = double(ix) / nx;
    std::vector<Complex> ph(modes.size());
    for (std::size_t r = 0; r < modes.size(); ++r) ph[r] = phase(kTwoPi * modes[r] * x);
    for (int iy = 0; iy < ny; ++iy) {
      Complex v{};
      for (std::size_t r = 0; r < modes.size(); ++r) v += ph[r] * row_values[r][iy];
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

Series2& Series2::operator+=(const Series2& other) {
  for (const auto& [key, c] : other.coeffs_) add(key.first, key.second, c);
  return *this;
}

Series2& Series2::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [key, c] : coeffs_) c *= s;
  return *this;
}

Series2 operator*(const Series2& a, const Series2& b) {
  Series2 out;
  for (const auto& [ka, ca] : a.coeffs_) {
    for (const auto& [kb, cb] : b.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  }
  return out;
}

Series2 Series2::pruned(double tol) const {
  Series2 out;
  for (const auto& [key, c] : coeffs_) {
    if (std::abs(c) > tol) out.coeffs_[key] = c;
  }
  return out;
}

Series2 lift_y(const Series1& f) {
  Series2 out;
  for (const auto& [k, c] : f.coeffs()) out.add(0, k, c);
  return out;
}

Series2 lift_x(const Series1& f) {
  Series2 out;
  for (const auto& [j, c] : f.coeffs()) out.add(j, 0, c);
  return out;
}

double max_coeff_difference(const Series1& a, const Series1& b) {
  double worst = 0.0;
  for (const auto& [k, c] : a.coeffs()) worst = std::max(worst, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.coeffs()) worst = std::max(worst, std::abs(c - a.coeff(k)));
  return worst;
}

double max_coeff_difference(const Series2& a, const Series2& b) {
  double worst = 0.0;
  for (const auto& [key, c] : a.coeffs()) worst = std::max(worst, std::abs(c - b.coeff(key.first, key.second)));
  for (const auto& [key, c] : b.coeffs()) worst = std::max(worst, std::abs(c - a.coeff(key.first, key.second)));
  return worst;
}

}  // namespace landau
