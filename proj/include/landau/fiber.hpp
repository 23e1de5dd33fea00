#pragma once

// The operator on one quasimomentum fiber xi, truncated to Landau levels
// m <= m_max and momentum sites |n| <= N, in the basis
// exp(2 pi i (xi + n) x) Psi_{xi+n,m}(y).

#include <Eigen/Dense>

#include <vector>

#include "landau/field_model.hpp"
#include "landau/matrix_elements.hpp"

namespace landau {

/// (m, n) <-> m (2N + 1) + (n + N): each Landau level is a contiguous block.
class IndexMap {
 public:
  IndexMap() = default;
  IndexMap(int m_max, int n_window) : m_max_(m_max), n_window_(n_window) {}

  int m_max() const { return m_max_; }
  int n_window() const { return n_window_; }
  int sites() const { return 2 * n_window_ + 1; }
  int levels() const { return m_max_ + 1; }
  int dim() const { return levels() * sites(); }
  int index(int m, int n) const { return m * sites() + (n + n_window_); }
  int level(int i) const { return i / sites(); }
  int site(int i) const { return i % sites() - n_window_; }

 private:
  int m_max_ = 0;
  int n_window_ = 0;
};

struct FiberOptions {
  int m_max = 12;
  int n_window = 16;
  /// Largest tolerated coupling beyond |n - k| = 2N, which the window drops.
  double truncation_tol = 1e-10;
};

struct FiberOperator {
  double xi = 0.0;
  IndexMap index;
  double b_c = 0.0;
  double beta = 0.0;
  double eps0 = 0.0;
  double eps1 = 0.0;
  Eigen::MatrixXcd h;
  /// B_c (1/2 + m) - eps0 A0_{m,m}(beta (xi + n)) for every basis vector.
  Eigen::VectorXd first_order_diagonal;
  /// max |H - H*| / 2 before symmetrisation.
  double hermitian_defect = 0.0;
};

/// Entry ((m, n), (l, k)) with p = beta (xi + n) and K = n - k:
///   delta B_c (1/2 + m) + delta_{nk} [eps0^2/2 tilde_A0_{l,m}(p) - eps0 A0_{l,m}(p)]
///   + eps1^2/2 tilde_A1^(K)_{l,m}(p) - eps1/2 hat_A1^(K)_{l,m}(p).
/// Throws TruncationTooSmall when couplings with |K| > 2N exceed the
/// tolerance.
FiberOperator assemble(double xi, const GaugeData& gauge, const MatrixElementTable& table,
                       const FiberOptions& options);

struct Spectrum {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns, empty when not requested
};

/// Groups of sites that the matrix couples, directly or through a chain.
std::vector<std::vector<int>> site_components(const Eigen::MatrixXcd& h, const IndexMap& index);

/// Full eigendecomposition; decoupled site groups are diagonalised
/// separately. Throws EigensolverFailure if the solver fails or a residual
/// exceeds 1e-9 ||H||.
Spectrum dense_spectrum(const Eigen::MatrixXcd& h, const IndexMap& index, bool want_vectors = true);
inline Spectrum dense_spectrum(const FiberOperator& op, bool want_vectors = true) {
  return dense_spectrum(op.h, op.index, want_vectors);
}

/// H = D + M + O. O holds the entries between different Landau levels of
/// which at least one is protected (m <= m_protect); M the rest off the
/// diagonal.
struct BlockSplit {
  Eigen::VectorXd d;
  Eigen::MatrixXcd m;
  Eigen::MatrixXcd o;
};

BlockSplit split(const Eigen::MatrixXcd& h, const std::vector<int>& levels, int m_protect);
BlockSplit split(const FiberOperator& op, int m_protect);

/// Levels of every basis vector of the index map.
std::vector<int> level_labels(const IndexMap& index);
std::vector<int> site_labels(const IndexMap& index);

/// Per eigenvector: the Landau level carrying the largest share of its norm,
/// or -1 if that share is below one half.
struct Attribution {
  std::vector<int> level;
  std::vector<double> weight;
};

Attribution attribute_levels(const Spectrum& spectrum, const IndexMap& index);

/// Eigenvalues attributed to level m, ascending.
std::vector<double> attributed_eigenvalues(const Spectrum& spectrum, const Attribution& attribution, int m);

}  // namespace landau
