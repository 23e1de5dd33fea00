#include "landau/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "landau/error.hpp"

namespace landau {

namespace {

void add_block(Eigen::MatrixXcd& h, const IndexMap& index, int n, int k, const MatrixXcd& t, Complex scale) {
  // t is indexed (l, m); the entry goes to row (m, n), column (l, k).
  for (int m = 0; m <= index.m_max(); ++m) {
    for (int l = 0; l <= index.m_max(); ++l) {
      h(index.index(m, n), index.index(l, k)) += scale * t(l, m);
    }
  }
}

}  // namespace

FiberOperator assemble(double xi, const GaugeData& gauge, const MatrixElementTable& table,
                       const FiberOptions& options) {
  if (options.m_max < 0 || options.n_window < 0) throw Error(ErrorKind::Config, "negative truncation");
  if (table.l_max() < options.m_max) {
    throw Error(ErrorKind::Config, "matrix element table does not cover m_max");
  }
  FiberOperator op;
  op.xi = xi;
  op.index = IndexMap(options.m_max, options.n_window);
  op.b_c = gauge.b_c;
  op.beta = gauge.beta;
  op.eps0 = gauge.eps0;
  op.eps1 = gauge.eps1;
  const IndexMap& idx = op.index;
  const int n_window = options.n_window;

  if (gauge.eps1 != 0.0) {
    double dropped = 0.0;
    for (const auto* family : {&table.tilde_a1_all(), &table.hat_a1_all()}) {
      for (const auto& [k, poly] : *family) {
        if (std::abs(k) > 2 * n_window) dropped = std::max(dropped, gauge.eps1 * poly.bound());
      }
    }
    if (dropped > options.truncation_tol) {
      std::ostringstream msg;
      msg << "couplings beyond |n-k| = " << 2 * n_window << " of size " << dropped << " are dropped; raise n_window";
      throw Error(ErrorKind::TruncationTooSmall, msg.str());
    }
  }

  op.h = Eigen::MatrixXcd::Zero(idx.dim(), idx.dim());
  op.first_order_diagonal.resize(idx.dim());
  const double half_e0_sq = 0.5 * gauge.eps0 * gauge.eps0;
  const double half_e1_sq = 0.5 * gauge.eps1 * gauge.eps1;
  for (int n = -n_window; n <= n_window; ++n) {
    const double p = gauge.beta * (xi + n);
    const MatrixXcd a0 = table.a0()(p);
    for (int m = 0; m <= idx.m_max(); ++m) {
      const double landau = gauge.b_c * (0.5 + m);
      op.h(idx.index(m, n), idx.index(m, n)) += landau;
      op.first_order_diagonal(idx.index(m, n)) = landau - gauge.eps0 * a0(m, m).real();
    }
    if (gauge.eps0 != 0.0) {
      add_block(op.h, idx, n, n, table.tilde_a0()(p), half_e0_sq);
      add_block(op.h, idx, n, n, a0, -gauge.eps0);
    }
    if (gauge.eps1 == 0.0) continue;
    for (int k = -n_window; k <= n_window; ++k) {
      const int shift = n - k;
      if (const auto* poly = table.tilde_a1(shift)) add_block(op.h, idx, n, k, (*poly)(p), half_e1_sq);
      if (const auto* poly = table.hat_a1(shift)) add_block(op.h, idx, n, k, (*poly)(p), -0.5 * gauge.eps1);
    }
  }

  const Eigen::MatrixXcd adj = op.h.adjoint();
  op.hermitian_defect = 0.5 * (op.h - adj).cwiseAbs().maxCoeff();
  if (op.hermitian_defect > 1e-10) {
    std::ostringstream msg;
    msg << "assembled fiber operator deviates from Hermitian by " << op.hermitian_defect;
    throw Error(ErrorKind::QuadratureUnderResolved, msg.str());
  }
  op.h = 0.5 * (op.h + adj);
  return op;
}

std::vector<std::vector<int>> site_components(const Eigen::MatrixXcd& h, const IndexMap& index) {
  const int sites = index.sites();
  std::vector<int> parent(sites);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < index.dim(); ++i) {
    const int si = index.site(i) + index.n_window();
    for (int j = 0; j < index.dim(); ++j) {
      if (h(i, j) == Complex{}) continue;
      const int sj = index.site(j) + index.n_window();
      parent[find(si)] = find(sj);
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(sites, -1);
  for (int s = 0; s < sites; ++s) {
    const int root = find(s);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(s - index.n_window());
  }
  return groups;
}

Spectrum dense_spectrum(const Eigen::MatrixXcd& h, const IndexMap& index, bool want_vectors) {
  const int dim = index.dim();
  if (h.rows() != dim || h.cols() != dim) throw Error(ErrorKind::Config, "matrix does not match index map");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());

  std::vector<double> values;
  std::vector<Eigen::VectorXcd> vectors;
  values.reserve(dim);
  for (const auto& group : site_components(h, index)) {
    std::vector<int> rows;
    for (int m = 0; m <= index.m_max(); ++m) {
      for (int n : group) rows.push_back(index.index(m, n));
    }
    const int b = static_cast<int>(rows.size());
    Eigen::MatrixXcd sub(b, b);
    for (int i = 0; i < b; ++i) {
      for (int j = 0; j < b; ++j) sub(i, j) = h(rows[i], rows[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        sub, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigensolverFailure, "dense eigensolver failed");
    for (int c = 0; c < b; ++c) {
      values.push_back(solver.eigenvalues()(c));
      if (!want_vectors) continue;
      const Eigen::VectorXcd v = solver.eigenvectors().col(c);
      const double residual = (sub * v - solver.eigenvalues()(c) * v).norm();
      if (residual > 1e-9 * scale) {
        throw Error(ErrorKind::EigensolverFailure, "eigenpair residual above 1e-9 ||H||");
      }
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
      for (int i = 0; i < b; ++i) full(rows[i]) = v(i);
      vectors.push_back(std::move(full));
    }
  }

  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  Spectrum out;
  out.values.resize(dim);
  if (want_vectors) out.vectors.resize(dim, dim);
  for (int c = 0; c < dim; ++c) {
    out.values(c) = values[order[c]];
    if (want_vectors) out.vectors.col(c) = vectors[order[c]];
  }
  return out;
}

BlockSplit split(const Eigen::MatrixXcd& h, const std::vector<int>& levels, int m_protect) {
  const auto dim = h.rows();
  BlockSplit s;
  s.d = h.diagonal().real();
  s.m = Eigen::MatrixXcd::Zero(dim, dim);
  s.o = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (i == j) continue;
      const bool coupling = levels[i] != levels[j] && (levels[i] <= m_protect || levels[j] <= m_protect);
      (coupling ? s.o : s.m)(i, j) = h(i, j);
    }
  }
  return s;
}

std::vector<int> level_labels(const IndexMap& index) {
  std::vector<int> out(index.dim());
  for (int i = 0; i < index.dim(); ++i) out[i] = index.level(i);
  return out;
}

std::vector<int> site_labels(const IndexMap& index) {
  std::vector<int> out(index.dim());
  for (int i = 0; i < index.dim(); ++i) out[i] = index.site(i);
  return out;
}

BlockSplit split(const FiberOperator& op, int m_protect) { return split(op.h, level_labels(op.index), m_protect); }

Attribution attribute_levels(const Spectrum& spectrum, const IndexMap& index) {
  const auto count = spectrum.values.size();
  Attribution a;
  a.level.assign(count, -1);
  a.weight.assign(count, 0.0);
  for (Eigen::Index c = 0; c < count; ++c) {
    const auto v = spectrum.vectors.col(c);
    const double total = v.squaredNorm();
    for (int m = 0; m <= index.m_max(); ++m) {
      const double w = v.segment(index.index(m, -index.n_window()), index.sites()).squaredNorm() / total;
      if (w > a.weight[c]) {
        a.weight[c] = w;
        a.level[c] = m;
      }
    }
    if (a.weight[c] < 0.5) a.level[c] = -1;
  }
  return a;
}

std::vector<double> attributed_eigenvalues(const Spectrum& spectrum, const Attribution& attribution, int m) {
  std::vector<double> out;
  for (Eigen::Index c = 0; c < spectrum.values.size(); ++c) {
    if (attribution.level[c] == m) out.push_back(spectrum.values(c));
  }
  return out;
}

}  // namespace landau
