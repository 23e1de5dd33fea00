#pragma once

// Iterative block diagonalisation of a fiber operator onto its protected
// Landau levels. Each step solves [D, W] = i O for a Hermitian generator W and
// conjugates by the exact unitary exp(iW), so the coupling between protected
// levels and the rest shrinks geometrically.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "landau/fiber.hpp"

namespace landau {

/// Level and site of every row of a (sub)matrix.
struct Labels {
  std::vector<int> level;
  std::vector<int> site;

  static Labels of(const IndexMap& index) { return {level_labels(index), site_labels(index)}; }
  Labels subset(const std::vector<int>& rows) const;
};

struct NormWeights {
  /// Landau-level weight l^s + 1; s = 0 means no weight.
  double s = 0.0;
  /// Momentum weight exp(2 delta |n - k|).
  double delta = 0.0;

  double level_weight(int l) const { return s > 0.0 ? std::pow(double(l), s) + 1.0 : 1.0; }
};

/// W with W_ab = i O_ab / (D_a - D_b) on the support of O. Throws
/// SmallDenominator when a used denominator falls below B_c |l_a - l_b| / 2.
/// `margin` receives min |D_a - D_b| / (B_c |l_a - l_b| / 2) over the support
/// (infinity when O = 0).
Eigen::MatrixXcd solve_homological(const BlockSplit& split, const std::vector<int>& levels, double b_c,
                                   double* margin = nullptr);

struct Rotation {
  Eigen::MatrixXcd h;      // exp(-iW) H exp(iW)
  Eigen::MatrixXcd e;      // exp(iW) - I
  double w_norm = 0.0;     // spectral norm of W (power iteration)
  double unitarity = 0.0;  // max |U*U - I|
};

/// Exact conjugation through the eigendecomposition of W. The increment
/// E = exp(iW) - I is formed directly so that H' = H + E*H + HE + E*HE keeps
/// full relative accuracy on the small off-diagonal entries. Throws
/// EigensolverFailure if U fails the 1e-12 unitarity check.
Rotation rotate(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& w);

struct Norms {
  /// Weighted coupling of protected rows to other levels.
  double gamma = 0.0;
  /// max(diagonal drift from the first-order diagonal / eps0, weighted
  /// off-diagonal sums of unprotected rows / (l^(s+1) + 1)).
  double delta = 0.0;
};

/// Pointwise (single-fiber) norms. `reference_diagonal` may be empty, in
/// which case the drift term is omitted.
Norms measure_norms(const Eigen::MatrixXcd& h, const Labels& labels, int m_protect, const NormWeights& weights,
                    const Eigen::VectorXd& reference_diagonal = {}, double eps0 = 0.0);

struct ReductionOptions {
  int m_protect = 3;
  double tol = 1e-12;
  int max_iter = 40;
  NormWeights weights;
};

struct IterationRecord {
  int j = 0;
  double gamma = 0.0;
  double delta = 0.0;
  double w_norm = 0.0;
  double denominator_margin = 0.0;
};

struct ReductionState {
  double xi = 0.0;
  double b_c = 0.0;
  double beta = 0.0;
  double eps0 = 0.0;
  IndexMap index;
  int m_protect = 0;
  Eigen::MatrixXcd h;  // reduced operator U* H U
  Eigen::MatrixXcd u;  // accumulated unitary; columns are the new basis
  std::vector<IterationRecord> history;
  bool converged = false;

  /// Block of the reduced operator on Landau level m (sites -N..N).
  Eigen::MatrixXcd level_block(int m) const;
};

/// Iterates until gamma <= tol. Sites that the operator does not couple are
/// reduced as independent blocks in lockstep. Throws NoConvergence after
/// max_iter steps and propagates SmallDenominator.
ReductionState reduce(const FiberOperator& op, const ReductionOptions& options);

}  // namespace landau
