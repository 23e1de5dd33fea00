#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "landau/fourier.hpp"
#include "landau/spectral.hpp"

using namespace landau;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXcd sample(const std::function<Complex(double)>& f, int n) {
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) out(i) = f(double(i) / n);
  return out;
}

}  // namespace

TEST_CASE("trig series evaluates to cosine plus sine") {
  const Series1 f = Series1::trig(3, 0.7, -1.2);
  for (double t : {0.0, 0.13, 0.5, 0.91}) {
    const double expect = 0.7 * std::cos(kTwoPi * 3 * t) - 1.2 * std::sin(kTwoPi * 3 * t);
    CHECK(std::abs(f(t) - expect) <= 1e-14);
  }
  CHECK(f.is_real());
  CHECK(f.bandwidth() == 3);
}

TEST_CASE("derivative and antiderivative are exact") {
  const Series1 f = Series1::trig(1, 1.0, 0.0) + Series1::trig(2, 0.0, 0.5);
  for (double t : {0.05, 0.3, 0.77}) {
    const double d = -kTwoPi * std::sin(kTwoPi * t) + 0.5 * 2 * kTwoPi * std::cos(2 * kTwoPi * t);
    CHECK(std::abs(f.derivative()(t) - d) <= 1e-13);
  }
  CHECK(max_coeff_difference(f.antiderivative().derivative(), f) <= 1e-15);
  // The mean is not recovered by d/dt after integrating.
  const Series1 g = f + Series1::constant(2.0);
  CHECK(g.antiderivative().derivative().coeff(0) == Complex{});
}

TEST_CASE("products multiply the functions") {
  const Series1 a = Series1::trig(1, 1.0, 0.0);
  const Series1 b = Series1::trig(2, 0.0, 1.0);
  const Series1 c = a * b;
  for (double t : {0.1, 0.45, 0.8}) CHECK(std::abs(c(t) - a(t) * b(t)) <= 1e-14);
}

TEST_CASE("shift translates the argument") {
  const Series1 f = Series1::trig(2, 0.3, 0.4);
  const Series1 g = f.shifted(0.17);
  for (double t : {0.0, 0.2, 0.6}) CHECK(std::abs(g(t) - f(t + 0.17)) <= 1e-14);
}

TEST_CASE("two-dimensional series: modes, derivatives, hermiticity") {
  Series2 s;
  s.add(1, 1, 0.25);
  s.add(1, -1, 0.25);
  s.add(-1, 1, 0.25);
  s.add(-1, -1, 0.25);  // cos(2 pi x) cos(2 pi y)
  CHECK(s.is_hermitian());
  CHECK(s.max_abs() == doctest::Approx(1.0));
  const double x = 0.21, y = 0.64;
  CHECK(std::abs(s(x, y) - std::cos(kTwoPi * x) * std::cos(kTwoPi * y)) <= 1e-14);
  CHECK(std::abs(s.d_dx()(x, y) + kTwoPi * std::sin(kTwoPi * x) * std::cos(kTwoPi * y)) <= 1e-13);
  CHECK(std::abs(s.d_dy()(x, y) + kTwoPi * std::cos(kTwoPi * x) * std::sin(kTwoPi * y)) <= 1e-13);
  CHECK(s.x_average().empty());
  CHECK(s.x_modes() == std::vector<int>{-1, 1});
  CHECK(std::abs(s.x_mode(1)(y) - 0.5 * std::cos(kTwoPi * y)) <= 1e-14);

  Series2 bad;
  bad.add(1, 0, Complex(1.0, 0.0));
  CHECK_FALSE(bad.is_hermitian());
}

TEST_CASE("lifts embed one variable") {
  const Series1 f = Series1::trig(1, 0.0, 2.0);
  CHECK(std::abs(lift_y(f)(0.37, 0.11) - f(0.11)) <= 1e-14);
  CHECK(std::abs(lift_x(f)(0.37, 0.11) - f(0.37)) <= 1e-14);
}

TEST_CASE("spectral derivative of a band-limited function") {
  auto f = [](double p) { return Complex(std::sin(kTwoPi * p) + 0.3 * std::cos(3 * kTwoPi * p), 0.0); };
  auto df = [](double p) {
    return Complex(kTwoPi * std::cos(kTwoPi * p) - 0.9 * kTwoPi * std::sin(3 * kTwoPi * p), 0.0);
  };
  auto d2f = [](double p) {
    return Complex(-kTwoPi * kTwoPi * std::sin(kTwoPi * p) - 2.7 * kTwoPi * kTwoPi * std::cos(3 * kTwoPi * p), 0.0);
  };
  const auto s = sample(f, 32);
  CHECK((spectral_derivative(s, 1) - sample(df, 32)).cwiseAbs().maxCoeff() <= 1e-11);
  CHECK((spectral_derivative(s, 2) - sample(d2f, 32)).cwiseAbs().maxCoeff() <= 1e-9);
  // C^2 norm is the sup of the second derivative here.
  const double expect = sample(d2f, 32).cwiseAbs().maxCoeff();
  CHECK(c2_norm(s) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("trigonometric interpolation reproduces band-limited functions") {
  auto f = [](double p) { return Complex(std::cos(kTwoPi * p), std::sin(2 * kTwoPi * p)); };
  const auto s = sample(f, 16);
  const TrigInterpolant interp(s);
  for (double p : {0.013, 0.5, 0.777, 1.25}) {
    CHECK(std::abs(interp(p) - f(p)) <= 1e-13);
    CHECK(std::abs(trig_interpolate(s, p) - f(p)) <= 1e-13);
  }
}

TEST_CASE("line fit recovers slope, intercept and residual") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 - 0.5 * v);
  const LineFit exact = fit_line(x, y);
  CHECK(exact.slope == doctest::Approx(-0.5));
  CHECK(exact.intercept == doctest::Approx(3.0));
  CHECK(exact.relative_residual <= 1e-12);

  const std::vector<double> noisy{2.6, 1.9, 1.6, 0.9, 0.6};
  const LineFit fit = fit_line(x, noisy);
  // Normal equations by hand: mean x = 3, mean y = 1.52, Sxx = 10, Sxy = -5.
  CHECK(fit.slope == doctest::Approx(-0.5));
  CHECK(fit.intercept == doctest::Approx(3.02));
  CHECK(fit.relative_residual > 0.0);
  CHECK(fit.slope_stderr > 0.0);
}

TEST_CASE("cyclic sign changes") {
  Eigen::VectorXd v(8);
  v << 1, 2, -1, -2, -1, 0, 3, 4;
  CHECK(cyclic_sign_changes(v, 1e-12) == 2);
  Eigen::VectorXd w(4);
  w << 1, -1, 1, -1;
  CHECK(cyclic_sign_changes(w, 1e-12) == 4);
}
