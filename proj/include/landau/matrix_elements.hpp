#pragma once

// Matrix elements of the perturbation in the Landau basis.
//
// Every family is a trigonometric polynomial in p because the potentials are
// band-limited: a mode exp(2 pi i q y) of the potential contributes
// exp(2 pi i q p) times a p-independent Hermite overlap. The tables store the
// (l, m) coefficient matrices of each mode and evaluate exactly at any p.
//
// With u = sqrt(B_c) y, s = 2 pi k / sqrt(B_c) and g(u) the relevant
// potential coefficient at u / sqrt(B_c) + p:
//
//   tilde_A0_{l,m}(p)     = int (A0)^2 Omega_l(u) Omega_m(u) du
//   A0_{l,m}(p)           = sqrt(B_c) int A0 u Omega_l(u) Omega_m(u) du
//   tilde_A1^(k)_{l,m}(p) = int [(A1)^2]_k Omega_l(u + s) Omega_m(u) du
//   hat_A1^(k)_{l,m}(p)   = -i sqrt(B_c) int [A1]_k (Omega_l'(u + s) Omega_m(u)
//                                                  - Omega_l(u + s) Omega_m'(u)) du
//
// where [f]_k is the k-th Fourier coefficient in x. Derivatives and the factor
// u are removed with the ladder relations before quadrature.

#include <Eigen/Dense>

#include <complex>
#include <map>

#include "landau/field_model.hpp"

namespace landau {

using MatrixXcd = Eigen::MatrixXcd;

/// T(p) = sum_q C_q exp(2 pi i q p), C_q indexed (l, m).
class MatrixTrigPoly {
 public:
  MatrixTrigPoly() = default;
  explicit MatrixTrigPoly(int size) : size_(size) {}

  int size() const { return size_; }
  bool empty() const { return terms_.empty(); }
  const std::map<int, MatrixXcd>& terms() const { return terms_; }
  void add(int q, const MatrixXcd& coeff);

  MatrixXcd operator()(double p) const;
  Complex entry(int l, int m, double p) const;
  /// sum_q max |C_q|, an upper bound for sup_p max_{l,m} |T(p)|.
  double bound() const;

 private:
  int size_ = 0;
  std::map<int, MatrixXcd> terms_;
};

enum class Family { TildeA0, A0, TildeA1, HatA1 };

struct TableOptions {
  int l_max = 12;
  /// Gauss-Hermite nodes. 0 starts from default_node_count(l_max + 1) and
  /// doubles until the doubling check passes (at most 4096 nodes).
  int n_nodes = 0;
  /// Largest change tolerated when the node count is doubled.
  double tol_quad = 1e-10;
};

class MatrixElementTable {
 public:
  /// Computes all four families. Throws QuadratureUnderResolved when doubling
  /// the node count moves any coefficient by more than tol_quad (relative to
  /// max(1, |coefficient|)).
  static MatrixElementTable build(const GaugeData& gauge, const TableOptions& options);

  int l_max() const { return l_max_; }
  int n_nodes() const { return n_nodes_; }
  double b_c() const { return b_c_; }
  double beta() const { return beta_; }
  /// Largest |k| with a nonzero A1-family entry.
  int k_max() const;
  /// Largest change observed in the node-doubling check.
  double quadrature_change() const { return quadrature_change_; }

  const MatrixTrigPoly& tilde_a0() const { return tilde_a0_; }
  const MatrixTrigPoly& a0() const { return a0_; }
  /// nullptr when the family vanishes at this k.
  const MatrixTrigPoly* tilde_a1(int k) const;
  const MatrixTrigPoly* hat_a1(int k) const;
  const std::map<int, MatrixTrigPoly>& tilde_a1_all() const { return tilde_a1_; }
  const std::map<int, MatrixTrigPoly>& hat_a1_all() const { return hat_a1_; }

  /// Entry of one family at (k, l, m, p); k is ignored for the A0 families.
  Complex value(Family family, int k, int l, int m, double p) const;
  /// Samples on the uniform grid i / n_points.
  Eigen::VectorXcd sample(Family family, int k, int l, int m, int n_points) const;

  /// Largest defect of the symmetry relations that make the assembled
  /// operator Hermitian, sampled on an n_points grid:
  ///   A0 families: T_{l,m}(p) = conj(T_{m,l}(p)),
  ///   A1 families: T^(k)_{l,m}(p) = conj(T^(-k)_{m,l}(p - beta k)).
  double symmetry_defect(int n_points) const;

 private:
  int l_max_ = 0;
  int n_nodes_ = 0;
  double b_c_ = 0.0;
  double beta_ = 0.0;
  double quadrature_change_ = 0.0;
  MatrixTrigPoly tilde_a0_;
  MatrixTrigPoly a0_;
  std::map<int, MatrixTrigPoly> tilde_a1_;
  std::map<int, MatrixTrigPoly> hat_a1_;
};

/// Single-entry conveniences; each builds the table it needs.
double a0_element(int l, int m, double p, const GaugeData& gauge, int n_nodes = 0);
double a0_sq_element(int l, int m, double p, const GaugeData& gauge, int n_nodes = 0);
Complex a1_hat_element(int k, int l, int m, double p, const GaugeData& gauge, int n_nodes = 0);
Complex a1_sq_element(int k, int l, int m, double p, const GaugeData& gauge, int n_nodes = 0);

}  // namespace landau
