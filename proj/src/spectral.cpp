#include "landau/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "landau/error.hpp"

namespace landau {

namespace {

// Signed frequency of FFT bin k for an n-point grid. The Nyquist bin of an
// even grid is dropped for odd derivatives so real data stays real.
int signed_frequency(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

VectorXcd spectral_derivative(const VectorXcd& samples, int order) {
  const int n = static_cast<int>(samples.size());
  assert(order >= 0);
  if (order == 0 || n == 0) return samples;
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(samples.data(), samples.data() + n);
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, in);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < n; ++k) {
    const int q = signed_frequency(k, n);
    if (n % 2 == 0 && k == n / 2 && order % 2 == 1) {
      spectrum[k] = 0.0;
      continue;
    }
    spectrum[k] *= std::pow(std::complex<double>(0.0, two_pi * q), order);
  }
  std::vector<std::complex<double>> out;
  fft.inv(out, spectrum);
  return Eigen::Map<VectorXcd>(out.data(), n);
}

double c2_norm(const VectorXcd& samples) {
  double norm = samples.cwiseAbs().maxCoeff();
  norm = std::max(norm, spectral_derivative(samples, 1).cwiseAbs().maxCoeff());
  norm = std::max(norm, spectral_derivative(samples, 2).cwiseAbs().maxCoeff());
  return norm;
}

double c2_norm(const Eigen::VectorXd& samples) { return c2_norm(VectorXcd(samples.cast<std::complex<double>>())); }

TrigInterpolant::TrigInterpolant(const VectorXcd& samples) {
  const int n = static_cast<int>(samples.size());
  if (n == 0) return;
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(samples.data(), samples.data() + n);
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, in);
  frequency_.resize(n);
  coeff_.resize(n);
  for (int k = 0; k < n; ++k) {
    frequency_[k] = signed_frequency(k, n);
    coeff_[k] = spectrum[k] / double(n);
  }
  nyquist_ = n % 2 == 0;
}

std::complex<double> TrigInterpolant::operator()(double p) const {
  const double two_pi = 2.0 * std::numbers::pi;
  const int n = static_cast<int>(coeff_.size());
  std::complex<double> sum{};
  for (int k = 0; k < n; ++k) {
    if (nyquist_ && k == n / 2) {
      // Split the Nyquist mode symmetrically between +q and -q.
      sum += coeff_[k] * std::cos(two_pi * frequency_[k] * p);
    } else {
      sum += coeff_[k] * std::polar(1.0, two_pi * frequency_[k] * p);
    }
  }
  return sum;
}

std::complex<double> trig_interpolate(const VectorXcd& samples, double p) { return TrigInterpolant(samples)(p); }

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw Error(ErrorKind::Config, "line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::Config, "line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss_res += r * r;
  }
  if (n > 2) {
    const double sigma2 = ss_res / double(n - 2);
    fit.slope_stderr = std::sqrt(sigma2 / sxx);
    fit.intercept_stderr = std::sqrt(sigma2 * (1.0 / double(n) + mx * mx / sxx));
  }
  fit.relative_residual = syy > 0.0 ? std::sqrt(ss_res / syy) : 0.0;
  return fit;
}

int cyclic_sign_changes(const Eigen::VectorXd& samples, double zero_tol) {
  std::vector<int> signs;
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    if (std::abs(samples(i)) > zero_tol) signs.push_back(samples(i) > 0 ? 1 : -1);
  }
  if (signs.size() < 2) return 0;
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  }
  return changes;
}

}  // namespace landau
