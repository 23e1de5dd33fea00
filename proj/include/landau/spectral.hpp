#pragma once

// Utilities for periodic samples on a uniform grid of [0, 1): spectral
// derivatives, C^2 norms, trigonometric interpolation, and small least-squares
// fits used by the diagnostics.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace landau {

using VectorXcd = Eigen::VectorXcd;

/// d^order/dp^order of the trigonometric interpolant through the samples.
VectorXcd spectral_derivative(const VectorXcd& samples, int order);

/// max(sup|f|, sup|f'|, sup|f''|) of the interpolant, read at the grid points.
double c2_norm(const VectorXcd& samples);
double c2_norm(const Eigen::VectorXd& samples);

/// Trigonometric interpolant through uniform samples on [0, 1).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const VectorXcd& samples);
  std::complex<double> operator()(double p) const;

 private:
  std::vector<int> frequency_;
  std::vector<std::complex<double>> coeff_;
  bool nyquist_ = false;
};

/// Trigonometric interpolant evaluated at p (period 1).
std::complex<double> trig_interpolate(const VectorXcd& samples, double p);

/// Ordinary least squares y = intercept + slope x with standard errors.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  /// sqrt(SS_res / SS_tot), i.e. sqrt(1 - R^2); 0 for a perfect fit.
  double relative_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Count of sign changes of the samples around the circle (cyclic), ignoring
/// entries with |v| <= zero_tol.
int cyclic_sign_changes(const Eigen::VectorXd& samples, double zero_tol);

}  // namespace landau
