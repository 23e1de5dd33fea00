#pragma once

// Generalised eigenfunctions
//
//   Phi(x, y) = sum_{l,n} f(l, n) exp(2 pi i (xi + n) x) Psi_{xi+n,l}(y)
//
// built from an eigenvector of a reduced level block mapped back through the
// accumulated unitary of the reduction.

#include <Eigen/Dense>

#include <complex>

#include "landau/fiber.hpp"
#include "landau/reduction.hpp"

namespace landau {

struct EigenfunctionOptions {
  /// Largest tolerated share of the squared norm on the outermost shell
  /// (l = m_max or |n| = N).
  double tail_tol = 1e-8;
};

struct EigenfunctionField {
  int m = 0;
  int k = 0;
  double xi = 0.0;
  double lambda = 0.0;
  double b_c = 0.0;
  double beta = 0.0;
  IndexMap index;
  Eigen::VectorXcd coeffs;  // f(l, n) at index.index(l, n), unit norm
  double residual = 0.0;    // ||(H - lambda) f|| / ||f||
  double tail = 0.0;        // squared-norm share of the outermost shell

  std::complex<double> value(double x, double y) const;
  /// d/dy Phi, term by term through the ladder relation for Omega'.
  std::complex<double> dy(double x, double y) const;
  /// Values on x_i = i / nx, y_j = -y_max + 2 y_max j / (ny - 1); rows are y.
  Eigen::MatrixXcd grid(int nx, int ny, double y_max) const;
};

/// Eigenfunction of level m localised at site k. Within a degenerate cluster
/// of the level block the unit vector at k is projected onto the cluster.
/// Throws Config for m outside the protected window or |k| > N, and
/// TailTooLarge when the outermost shell carries more than tail_tol.
EigenfunctionField reconstruct(const FiberOperator& op, const ReductionState& state, int m, int k,
                               const EigenfunctionOptions& options = {});

struct DecayReport {
  int n_dec = 0;
  double y_max = 0.0;
  /// sup over the grid of |Phi| (y^(2 n_dec) + 1).
  double sup_weighted = 0.0;
  double argmax_y = 0.0;
  /// Weighted envelope at y = -y_max and y = +y_max, larger of the two.
  double edge_value = 0.0;
  /// Log-log slope of max_x |Phi| against |y| over y_max/2 <= |y| <= y_max.
  double slope = 0.0;
  bool bounded = false;
  bool edge_growth = false;
};

DecayReport decay_report(const EigenfunctionField& field, int n_dec, double y_max, int nx, int ny);

struct Summability {
  /// sum |f(l, n)| (l^2 + 1) exp(2 delta |n|).
  double weighted_sum = 0.0;
  /// Share of that sum on the outermost shell.
  double tail_ratio = 0.0;
};

Summability summability(const EigenfunctionField& field, double delta);

}  // namespace landau
