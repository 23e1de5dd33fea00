#pragma once

// Weber-Hermite functions and Gauss-Hermite quadrature.
//
// Omega_m(y) is the L2-normalised eigenfunction of -1/2 d^2/dy^2 + y^2/2 with
// eigenvalue m + 1/2. Everything here is templated on the scalar so the same
// code runs in double and long double (the latter is used as a reference in
// tests).

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

#include "landau/error.hpp"

namespace landau {

template <class Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// Fills out[0..max_order] with Omega_0(y) .. Omega_max_order(y).
///
/// Uses the normalised three-term recurrence with the Gaussian folded into
/// the seed, so no Hermite polynomial is ever formed explicitly.
template <class Scalar, class Derived>
void omega_sequence(int max_order, Scalar y, Eigen::ArrayBase<Derived>& out) {
  using std::exp;
  using std::sqrt;
  assert(max_order >= 0);
  assert(out.size() >= max_order + 1);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  out(0) = exp(-y * y / 2) / sqrt(sqrt(pi));
  if (max_order == 0) return;
  out(1) = sqrt(Scalar(2)) * y * out(0);
  for (int m = 1; m < max_order; ++m) {
    out(m + 1) = sqrt(Scalar(2) / Scalar(m + 1)) * y * out(m) -
                 sqrt(Scalar(m) / Scalar(m + 1)) * out(m - 1);
  }
}

template <class Scalar>
ArrayX<Scalar> omega_sequence(int max_order, Scalar y) {
  ArrayX<Scalar> out(max_order + 1);
  omega_sequence(max_order, y, out);
  return out;
}

template <class Scalar>
Scalar omega(int m, Scalar y) {
  assert(m >= 0);
  return omega_sequence<Scalar>(m, y)(m);
}

/// Omega_m'(y) from the ladder relation; no numerical differentiation.
template <class Scalar>
Scalar omega_prime(int m, Scalar y) {
  using std::sqrt;
  assert(m >= 0);
  const auto w = omega_sequence<Scalar>(m + 1, y);
  Scalar value = -sqrt(Scalar(m + 1) / 2) * w(m + 1);
  if (m > 0) value += sqrt(Scalar(m) / 2) * w(m - 1);
  return value;
}

/// y * Omega_m(y) through the ladder relation.
template <class Scalar>
Scalar y_omega(int m, Scalar y) {
  using std::sqrt;
  const auto w = omega_sequence<Scalar>(m + 1, y);
  Scalar value = sqrt(Scalar(m + 1) / 2) * w(m + 1);
  if (m > 0) value += sqrt(Scalar(m) / 2) * w(m - 1);
  return value;
}

/// Landau eigenfunction Psi_{xi+n,m}(y) = B^{1/4} Omega_m(sqrt(B) (y - beta (xi+n)))
/// with beta = 2 pi / B.
inline double psi(double xi_plus_n, int m, double y, double b_c) {
  assert(b_c > 0);
  const double beta = 2.0 * std::numbers::pi / b_c;
  return std::pow(b_c, 0.25) * omega(m, std::sqrt(b_c) * (y - beta * xi_plus_n));
}

/// Gauss-Hermite rule for the weight exp(-u^2).
///
/// `scaled_weights` holds w_i exp(u_i^2), which is what integrals of the form
/// int g(u) Omega_l(u) Omega_m(u) du need: the Gaussian is already inside the
/// Hermite functions.
template <class Scalar>
struct QuadratureRule {
  ArrayX<Scalar> nodes;
  ArrayX<Scalar> weights;
  ArrayX<Scalar> scaled_weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch for the nodes, one Newton polish on Omega_n, then the
/// Christoffel numbers 1 / sum_k p_k(u_i)^2 for the weights.
template <class Scalar>
QuadratureRule<Scalar> gauss_hermite_rule(int n_nodes) {
  using std::abs;
  using std::exp;
  using std::sqrt;
  if (n_nodes < 1) throw Error(ErrorKind::QuadratureFailure, "need at least one node");

  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix jacobi = Matrix::Zero(n_nodes, n_nodes);
  for (int k = 1; k < n_nodes; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = sqrt(Scalar(k) / 2);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::QuadratureFailure, "Jacobi eigenproblem did not converge");
  }

  QuadratureRule<Scalar> rule;
  rule.nodes = solver.eigenvalues().array();
  rule.weights.resize(n_nodes);
  rule.scaled_weights.resize(n_nodes);

  ArrayX<Scalar> w(n_nodes + 1);
  for (int i = 0; i < n_nodes; ++i) {
    Scalar u = rule.nodes(i);
    for (int iter = 0; iter < 3; ++iter) {
      omega_sequence(n_nodes, u, w);
      // Omega_n' = sqrt(2n) Omega_{n-1} - u Omega_n (ladder relation with the
      // Omega_{n+1} term eliminated through the recurrence).
      const Scalar derivative = sqrt(Scalar(2 * n_nodes)) * w(n_nodes - 1) - u * w(n_nodes);
      if (derivative == Scalar(0)) break;
      const Scalar step = w(n_nodes) / derivative;
      u -= step;
      if (abs(step) <= std::numeric_limits<Scalar>::epsilon() * (1 + abs(u))) break;
    }
    rule.nodes(i) = u;
    omega_sequence(n_nodes - 1, u, w);
    const Scalar christoffel = w.head(n_nodes).square().sum();
    rule.scaled_weights(i) = 1 / christoffel;
    rule.weights(i) = exp(-u * u) / christoffel;
  }
  // Symmetrise: the exact rule is symmetric about 0.
  for (int i = 0; i < n_nodes / 2; ++i) {
    const int j = n_nodes - 1 - i;
    const Scalar x = (rule.nodes(j) - rule.nodes(i)) / 2;
    rule.nodes(i) = -x;
    rule.nodes(j) = x;
    const Scalar sw = (rule.scaled_weights(i) + rule.scaled_weights(j)) / 2;
    rule.scaled_weights(i) = rule.scaled_weights(j) = sw;
    const Scalar ww = (rule.weights(i) + rule.weights(j)) / 2;
    rule.weights(i) = rule.weights(j) = ww;
  }
  if (n_nodes % 2 == 1) rule.nodes(n_nodes / 2) = Scalar(0);
  return rule;
}

/// Default node count for integrands Omega_l Omega_m f with l, m <= max_order.
inline int default_node_count(int max_order) { return 4 * max_order + 40; }

/// Hermite functions up to `max_order` together with a quadrature rule sized
/// for products of two of them against a smooth bounded factor.
template <class Scalar>
class HermiteBasis {
 public:
  HermiteBasis(int max_order, Scalar scale, int n_nodes = 0)
      : max_order_(max_order),
        scale_(scale),
        rule_(gauss_hermite_rule<Scalar>(n_nodes > 0 ? n_nodes : default_node_count(max_order))) {
    assert(max_order >= 0);
    assert(scale > 0);
  }

  int max_order() const { return max_order_; }
  Scalar scale() const { return scale_; }
  const QuadratureRule<Scalar>& rule() const { return rule_; }

  /// Omega_0..Omega_max at every node: rows = nodes, columns = order.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> tabulate(Scalar shift = Scalar(0)) const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> table(rule_.size(), max_order_ + 1);
    ArrayX<Scalar> w(max_order_ + 1);
    for (int i = 0; i < rule_.size(); ++i) {
      omega_sequence(max_order_, rule_.nodes(i) + shift, w);
      table.row(i) = w.matrix().transpose();
    }
    return table;
  }

  /// Gram matrix int Omega_l Omega_m du evaluated with the basis' own rule.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gram() const {
    const auto table = tabulate();
    return table.transpose() * rule_.scaled_weights.matrix().asDiagonal() * table;
  }

 private:
  int max_order_;
  Scalar scale_;
  QuadratureRule<Scalar> rule_;
};

}  // namespace landau
