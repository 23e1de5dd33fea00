#include "landau/field_model.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "landau/error.hpp"

namespace landau {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_real(const Series2& s, const char* what) {
  if (!s.is_hermitian(1e-12)) {
    throw Error(ErrorKind::NonHermitianInput, std::string(what) + " coefficients are not Hermitian-symmetric");
  }
}

void check_real(const Series1& s, const char* what) {
  if (!s.is_real(1e-12)) {
    throw Error(ErrorKind::NonHermitianInput, std::string(what) + " coefficients are not Hermitian-symmetric");
  }
}

}  // namespace

double flux(const PeriodicField& field) { return field.coeffs.coeff(0, 0).real() / kTwoPi; }

Series2 GaugeData::field() const {
  Series2 b = Series2::constant(b_c);
  b += a1.d_dx() * Complex(eps1);
  b += lift_y(a0.derivative()) * Complex(-eps0);
  return b.pruned(0.0);
}

GaugeData make_gauge(double b_c, Series1 a0, Series2 a1, double eps0, double eps1,
                     const GaugeOptions& options) {
  if (b_c == 0.0) throw Error(ErrorKind::ZeroFlux, "constant field part vanishes");
  if (b_c < 0.0) throw Error(ErrorKind::Config, "negative flux is not supported; reflect y instead");
  if (eps0 < 0.0 || eps1 < 0.0) throw Error(ErrorKind::Config, "couplings must be non-negative");
  check_real(a0, "A0");
  check_real(a1, "A1");

  GaugeData g;
  g.b_c = b_c;
  g.beta = kTwoPi / b_c;
  g.flux = b_c / kTwoPi;

  // The constant mode of A0 only shifts the x-momentum; keep it, it is part
  // of the operator as given.
  if (options.subtract_x_average) {
    Series2 avg = lift_y(a1.x_average());
    a1 += avg * Complex(-1.0);
    a1 = a1.pruned(0.0);
  }
  if (options.normalize) {
    if (const double s0 = a0.max_abs(); s0 > 0.0) {
      a0 *= Complex(1.0 / s0);
      eps0 *= s0;
    }
    if (const double s1 = a1.max_abs(); s1 > 0.0) {
      a1 *= Complex(1.0 / s1);
      eps1 *= s1;
    }
  }
  if (a0.empty()) eps0 = 0.0;
  if (a1.empty()) eps1 = 0.0;
  if (options.require_ordering && eps0 > 0.0 && eps1 > 0.0 && !(eps1 < eps0)) {
    throw Error(ErrorKind::Config, "expected eps1 < eps0 when both couplings are nonzero");
  }
  g.eps0 = eps0;
  g.eps1 = eps1;
  g.a0 = std::move(a0);
  g.a1 = std::move(a1);
  return g;
}

GaugeData decompose(const PeriodicField& field, const GaugeOptions& options) {
  check_real(field.coeffs, "B");
  const double phi = flux(field);
  if (phi == 0.0) throw Error(ErrorKind::ZeroFlux, "field has zero flux; the Landau reduction is unavailable");
  const double b_c = kTwoPi * phi;

  Series2 b_z = field.coeffs;
  b_z.add(0, 0, -b_z.coeff(0, 0));
  b_z = b_z.pruned(0.0);

  // eps0 A0 = -int b_avg dy where b_avg is the x-average of B_z.
  const Series1 b_avg = b_z.x_average();
  assert(std::abs(b_avg.coeff(0)) == 0.0);
  Series1 a0 = b_avg.antiderivative() * Complex(-1.0);

  // eps1 A1 = int (B_z - b_avg) dx, mode by mode in x.
  Series2 a1;
  for (const auto& [key, c] : b_z.coeffs()) {
    if (key.first == 0) continue;
    a1.add(key.first, key.second, c / Complex(0.0, kTwoPi * key.first));
  }
  return make_gauge(b_c, std::move(a0), std::move(a1), 1.0, 1.0, options);
}

GaugeData with_couplings(GaugeData gauge, double eps0, double eps1) {
  if (eps0 < 0.0 || eps1 < 0.0) throw Error(ErrorKind::Config, "couplings must be non-negative");
  gauge.eps0 = gauge.a0.empty() ? 0.0 : eps0;
  gauge.eps1 = gauge.a1.empty() ? 0.0 : eps1;
  return gauge;
}

DiophantineReport check_diophantine(double beta, double constant, double kappa, std::int64_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::Config, "n_max must be at least 1");
  DiophantineReport r;
  r.beta = beta;
  r.kappa = kappa;
  r.constant = constant;
  r.min_value = INFINITY;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double x = beta * double(n);
    const double dist = std::abs(x - std::nearbyint(x));
    const double v = dist * std::pow(double(n), kappa);
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = n;
    }
  }
  r.violated = r.min_value < constant;

  // Continued fraction of beta; stop once the denominator exceeds n_max or
  // the remainder is exhausted.
  std::int64_t p_prev = 1, p = std::int64_t(std::floor(beta));
  std::int64_t q_prev = 0, q = 1;
  double x = beta - std::floor(beta);
  r.convergents.emplace_back(p, q);
  for (int iter = 0; iter < 64 && x > 1e-15; ++iter) {
    const double inv = 1.0 / x;
    const auto a = std::int64_t(std::floor(inv));
    x = inv - double(a);
    const std::int64_t p_next = a * p + p_prev;
    const std::int64_t q_next = a * q + q_prev;
    if (q_next > n_max) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    r.convergents.emplace_back(p, q);
  }
  return r;
}

}  // namespace landau
