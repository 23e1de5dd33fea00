#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "landau/error.hpp"
#include "landau/hermite.hpp"
#include "landau/matrix_elements.hpp"
#include "landau/spectral.hpp"

using namespace landau;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Landau function of level m centred at y = c, in long double.
long double landau_fn(int m, long double c, long double y, long double b) {
  return std::pow(b, 0.25L) * omega<long double>(m, std::sqrt(b) * (y - c));
}

long double landau_fn_dy(int m, long double c, long double y, long double b) {
  const long double h = 1e-3L;
  return (-landau_fn(m, c, y + 2 * h, b) + 8 * landau_fn(m, c, y + h, b) - 8 * landau_fn(m, c, y - h, b) +
          landau_fn(m, c, y - 2 * h, b)) /
         (12 * h);
}

// Complex integral over y in [c - 10, c + 10] by the trapezoid rule.
std::complex<long double> integrate(const std::function<std::complex<long double>(long double)>& f, long double c) {
  const long double step = 0.004L;
  const int n = static_cast<int>(20.0L / step);
  std::complex<long double> sum = 0.0L;
  for (int i = 0; i <= n; ++i) sum += f(c - 10.0L + step * i) * ((i == 0 || i == n) ? 0.5L : 1.0L);
  return sum * step;
}

std::complex<long double> eval(const Series1& s, long double y) {
  std::complex<long double> out = 0.0L;
  for (const auto& [k, c] : s.coeffs()) {
    const long double arg = 2.0L * std::numbers::pi_v<long double> * k * y;
    out += std::complex<long double>(c.real(), c.imag()) * std::complex<long double>(std::cos(arg), std::sin(arg));
  }
  return out;
}

// <psi_{m, p} | f | psi_{l, p - beta K}>.
Complex multiplication_oracle(const Series1& f, int l, int m, double p, int k, double b) {
  const long double beta = 2.0L * std::numbers::pi_v<long double> / b;
  const long double cl = p - beta * k;
  const auto v = integrate(
      [&](long double y) { return landau_fn(m, p, y, b) * eval(f, y) * landau_fn(l, cl, y, b); }, p);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// <psi_{m, p} | (b y - 2 pi p) f | psi_{l, p}>.
Complex linear_oracle(const Series1& f, int l, int m, double p, double b) {
  const auto v = integrate(
      [&](long double y) {
        return landau_fn(m, p, y, b) * (b * (y - p)) * eval(f, y) * landau_fn(l, p, y, b);
      },
      p);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// -i <psi_{m, p} | d/dy f + f d/dy | psi_{l, p - beta K}>.
Complex derivative_oracle(const Series1& f, int l, int m, double p, int k, double b) {
  const long double beta = 2.0L * std::numbers::pi_v<long double> / b;
  const long double cl = p - beta * k;
  const auto v = integrate(
      [&](long double y) {
        return eval(f, y) * (landau_fn(m, p, y, b) * landau_fn_dy(l, cl, y, b) -
                             landau_fn_dy(m, p, y, b) * landau_fn(l, cl, y, b));
      },
      p);
  return Complex(0.0, -1.0) * Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

Series2 cos_x_cos_y() {
  Series2 a1;
  for (int j : {-1, 1}) {
    for (int k : {-1, 1}) a1.add(j, k, 0.25);
  }
  return a1;
}

Series2 x_only(std::initializer_list<std::pair<int, double>> cosines) {
  Series2 a1;
  for (const auto& [j, a] : cosines) {
    a1.add(j, 0, a / 2);
    a1.add(-j, 0, a / 2);
  }
  return a1;
}

}  // namespace

TEST_CASE("A0_00 of the cosine potential matches the Gaussian closed form") {
  const GaugeData g = make_gauge(kTwoPi, Series1::trig(1, 1.0, 0.0), Series2{}, 0.01, 0.0);
  const auto table = MatrixElementTable::build(g, TableOptions{});
  for (double p : {0.0, 0.1, 0.25, 0.37, 0.5, 0.9}) {
    // int u sin(a u) exp(-u^2) du = sqrt(pi) a / 2 exp(-a^2 / 4).
    const double expect = -kPi * std::exp(-kPi / 2) * std::sin(kTwoPi * p);
    CHECK(std::abs(table.value(Family::A0, 0, 0, 0, p) - expect) <= 1e-10);
    CHECK(std::abs(a0_element(0, 0, p, g) - expect) <= 1e-10);
    CHECK(std::abs(linear_oracle(g.a0, 0, 0, p, kTwoPi) - expect) <= 1e-10);
  }
}

TEST_CASE("A0 families match direct integration") {
  for (double b : {kTwoPi, 3.0}) {
    const Series1 a0 = Series1::trig(1, 0.6, 0.2) + Series1::trig(2, 0.0, 0.3);
    const GaugeData g = make_gauge(b, a0, Series2{}, 0.01, 0.0);
    const auto table = MatrixElementTable::build(g, TableOptions{6, 0, 1e-10});
    const Series1 sq = g.a0 * g.a0;
    for (double p : {0.13, 0.71}) {
      for (int l = 0; l <= 4; ++l) {
        for (int m = 0; m <= 4; ++m) {
          CHECK(std::abs(table.value(Family::A0, 0, l, m, p) - linear_oracle(g.a0, l, m, p, b)) <= 1e-10);
          CHECK(std::abs(table.value(Family::TildeA0, 0, l, m, p) - multiplication_oracle(sq, l, m, p, 0, b)) <=
                1e-10);
        }
      }
    }
  }
}

TEST_CASE("A1 families match direct integration") {
  for (double b : {kTwoPi, 5.0}) {
    const GaugeData g = make_gauge(b, Series1::trig(1, 1.0, 0.0), cos_x_cos_y(), 0.01, 0.005);
    const auto table = MatrixElementTable::build(g, TableOptions{5, 0, 1e-10});
    const Series2 sq = g.a1 * g.a1;
    for (int k : {-2, -1, 0, 1, 2}) {
      for (double p : {0.21, 0.64}) {
        for (int l = 0; l <= 3; ++l) {
          for (int m = 0; m <= 3; ++m) {
            CHECK(std::abs(table.value(Family::TildeA1, k, l, m, p) -
                           multiplication_oracle(sq.x_mode(k), l, m, p, k, b)) <= 1e-9);
            CHECK(std::abs(table.value(Family::HatA1, k, l, m, p) -
                           derivative_oracle(g.a1.x_mode(k), l, m, p, k, b)) <= 1e-9);
          }
        }
      }
    }
    CHECK(std::abs(a1_hat_element(1, 2, 1, 0.3, g) - table.value(Family::HatA1, 1, 2, 1, 0.3)) <= 1e-12);
    CHECK(std::abs(a1_sq_element(-1, 0, 3, 0.3, g) - table.value(Family::TildeA1, -1, 0, 3, 0.3)) <= 1e-12);
  }
}

TEST_CASE("cosine potential obeys the parity selection rules") {
  const GaugeData g = make_gauge(kTwoPi, Series1::trig(1, 1.0, 0.0), Series2{}, 0.01, 0.0);
  const auto table = MatrixElementTable::build(g, TableOptions{});
  // A0(p) = a cos(2 pi p) + b sin(2 pi p) with a = T_1 + T_-1, b = i (T_1 - T_-1).
  const auto& a0 = table.a0().terms();
  REQUIRE(a0.size() == 2);
  const MatrixXcd a = a0.at(1) + a0.at(-1);
  const MatrixXcd bs = Complex(0.0, 1.0) * (a0.at(1) - a0.at(-1));
  const auto& sq = table.tilde_a0().terms();
  REQUIRE(sq.size() == 3);
  const MatrixXcd c = sq.at(2) + sq.at(-2);
  const MatrixXcd d = Complex(0.0, 1.0) * (sq.at(2) - sq.at(-2));
  double worst = 0.0;
  for (int l = 0; l <= table.l_max(); ++l) {
    for (int m = 0; m <= table.l_max(); ++m) {
      if ((l + m) % 2 == 0) {
        worst = std::max({worst, std::abs(a(l, m)), std::abs(d(l, m))});
      } else {
        worst = std::max({worst, std::abs(bs(l, m)), std::abs(c(l, m))});
      }
      worst = std::max(worst, std::abs(sq.at(0)(l, m) - (l == m ? 0.5 : 0.0)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("x-only A1: the zero mode is a constant shift, other modes do not vanish") {
  const double b = kTwoPi;
  const GaugeData g = make_gauge(b, Series1{}, x_only({{1, 1.0}, {2, 0.5}}), 0.0, 0.01);
  const auto table = MatrixElementTable::build(g, TableOptions{8, 0, 1e-10});
  const Series2 sq = g.a1 * g.a1;
  const double avg = sq.coeff(0, 0).real();
  for (double p : {0.0, 0.3, 0.8}) {
    for (int l = 0; l <= 8; ++l) {
      for (int m = 0; m <= 8; ++m) {
        CHECK(std::abs(table.value(Family::HatA1, 0, l, m, p)) <= 1e-12);
        CHECK(std::abs(table.value(Family::TildeA1, 0, l, m, p) - (l == m ? avg : 0.0)) <= 1e-12);
      }
    }
    // Landau functions at centres p and p - beta K overlap in exp(-s^2 / 4)
    // with s = 2 pi K / sqrt(B); the derivative family carries an extra s.
    for (int k : {-2, -1, 1, 2}) {
      const double s = kTwoPi * k / std::sqrt(b);
      const double ck = g.a1.coeff(k, 0).real();
      const double cks = sq.coeff(k, 0).real();
      CHECK(std::abs(table.value(Family::TildeA1, k, 0, 0, p) - cks * std::exp(-s * s / 4)) <= 1e-12);
      const Complex hat = Complex(0.0, std::sqrt(b) * ck * s * std::exp(-s * s / 4));
      CHECK(std::abs(table.value(Family::HatA1, k, 0, 0, p) - hat) <= 1e-12);
      CHECK(std::abs(hat) > 1e-3);
    }
  }
}

TEST_CASE("all families have period one in p and the hermitian relation") {
  const GaugeData g = make_gauge(kTwoPi, Series1::trig(1, 1.0, 0.3), cos_x_cos_y(), 0.01, 0.005);
  const auto table = MatrixElementTable::build(g, TableOptions{6, 0, 1e-10});
  double worst = 0.0;
  for (double p : {0.05, 0.42, 0.77}) {
    for (int l = 0; l <= 6; ++l) {
      for (int m = 0; m <= 6; ++m) {
        for (Family f : {Family::TildeA0, Family::A0}) {
          worst = std::max(worst, std::abs(table.value(f, 0, l, m, p) - table.value(f, 0, l, m, p + 1.0)));
        }
        for (int k = -2; k <= 2; ++k) {
          for (Family f : {Family::TildeA1, Family::HatA1}) {
            worst = std::max(worst, std::abs(table.value(f, k, l, m, p) - table.value(f, k, l, m, p + 1.0)));
          }
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
  CHECK(table.symmetry_defect(16) <= 1e-12);
}

TEST_CASE("A1 families decay exponentially in the x-mode") {
  const double rho = 0.5;
  Series2 a1;
  for (int j = 1; j <= 6; ++j) {
    for (int k : {-1, 1}) {
      a1.add(j, k, std::pow(rho, j) / 4);
      a1.add(-j, -k, std::pow(rho, j) / 4);
    }
  }
  const GaugeData g = make_gauge(kTwoPi, Series1{}, a1, 0.0, 0.01);
  const auto table = MatrixElementTable::build(g, TableOptions{6, 0, 1e-10});
  std::vector<double> ks, logs;
  for (int k = 1; k <= 6; ++k) {
    const MatrixTrigPoly* t = table.hat_a1(k);
    REQUIRE(t != nullptr);
    ks.push_back(k);
    logs.push_back(std::log(t->bound()));
  }
  for (std::size_t i = 1; i < logs.size(); ++i) CHECK(logs[i] < logs[i - 1]);
  const LineFit fit = fit_line(ks, logs);
  CHECK(fit.slope < 0.0);
}

TEST_CASE("quadrature resolution is checked") {
  const GaugeData g = make_gauge(kTwoPi, Series1::trig(3, 1.0, 0.0), cos_x_cos_y(), 0.01, 0.005);
  const auto table = MatrixElementTable::build(g, TableOptions{12, 0, 1e-10});
  CHECK(table.n_nodes() >= default_node_count(13));
  CHECK(table.quadrature_change() <= 1e-10);
  bool thrown = false;
  try {
    MatrixElementTable::build(g, TableOptions{12, 6, 1e-10});
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::QuadratureUnderResolved;
  }
  CHECK(thrown);
}
