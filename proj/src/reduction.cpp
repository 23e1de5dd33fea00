#include "landau/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landau/error.hpp"

namespace landau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double margin_of(const BlockSplit& split, const std::vector<int>& levels, double b_c) {
  double margin = kInf;
  const auto dim = split.o.rows();
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (split.o(a, b) == Complex{}) continue;
      const double gap = std::abs(split.d(a) - split.d(b));
      margin = std::min(margin, gap / (0.5 * b_c * std::abs(levels[a] - levels[b])));
    }
  }
  return margin;
}

struct Block {
  std::vector<int> rows;
  Labels labels;
  Eigen::MatrixXcd h;
  Eigen::MatrixXcd u;
  Eigen::VectorXd reference;
};

}  // namespace

Labels Labels::subset(const std::vector<int>& rows) const {
  Labels out;
  for (int r : rows) {
    out.level.push_back(level[r]);
    out.site.push_back(site[r]);
  }
  return out;
}

Eigen::MatrixXcd solve_homological(const BlockSplit& split, const std::vector<int>& levels, double b_c,
                                   double* margin) {
  const auto dim = split.o.rows();
  const double m = margin_of(split, levels, b_c);
  if (margin) *margin = m;
  if (m < 1.0) {
    std::ostringstream msg;
    msg << "denominator margin " << m << " below 1; the couplings are too strong for the protected window";
    throw Error(ErrorKind::SmallDenominator, msg.str());
  }
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (split.o(a, b) == Complex{}) continue;
      w(a, b) = Complex(0.0, 1.0) * split.o(a, b) / (split.d(a) - split.d(b));
    }
  }
  // [D, W] - iO vanishes entrywise by construction; check it anyway.
  double residual = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const Complex r = (split.d(a) - split.d(b)) * w(a, b) - Complex(0.0, 1.0) * split.o(a, b);
      residual = std::max(residual, std::abs(r));
    }
  }
  if (residual > 1e-12 * std::max(1.0, split.o.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::SmallDenominator, "homological equation residual above 1e-12");
  }
  return w;
}

namespace {

// Largest |eigenvalue| of a Hermitian matrix by power iteration on W^2.
double spectral_radius(const Eigen::MatrixXcd& w) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(w.rows()).normalized();
  double rho2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd next = w * (w * v);
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    const double change = std::abs(norm - rho2);
    rho2 = norm;
    v = next / norm;
    if (change <= 1e-14 * norm) break;
  }
  return std::sqrt(rho2);
}

}  // namespace

Rotation rotate(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& w) {
  const auto dim = h.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  Rotation r;
  if (w.cwiseAbs().maxCoeff() == 0.0) {
    r.h = h;
    r.e = Eigen::MatrixXcd::Zero(dim, dim);
    return r;
  }
  r.w_norm = spectral_radius(w);

  // exp(iW) - I by Taylor series on W / 2^s with |W / 2^s| <= 1/2, summed
  // until the remainder bound drops below 1e-18, then squared back up
  // through E(2X) = 2 E(X) + E(X)^2.
  const double bound = w.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (std::ldexp(bound, -squarings) > 0.5) ++squarings;
  const double nu = std::ldexp(bound, -squarings);
  const Eigen::MatrixXcd x = Complex(0.0, std::ldexp(1.0, -squarings)) * w;
  Eigen::MatrixXcd term = x;
  r.e = x;
  double remainder = nu;
  for (int k = 2; remainder > 1e-18; ++k) {
    term = (term * x) / double(k);
    r.e += term;
    remainder *= nu / (k + 1);
  }
  for (int i = 0; i < squarings; ++i) r.e = 2.0 * r.e + r.e * r.e;

  const Eigen::MatrixXcd he = h * r.e;
  Eigen::MatrixXcd out = h + he + he.adjoint() + r.e.adjoint() * he;
  r.h = 0.5 * (out + out.adjoint());

  const Eigen::MatrixXcd u = id + r.e;
  r.unitarity = (u.adjoint() * u - id).cwiseAbs().maxCoeff();
  if (r.unitarity > 1e-12) {
    std::ostringstream msg;
    msg << "rotation fails unitarity check: " << r.unitarity;
    throw Error(ErrorKind::EigensolverFailure, msg.str());
  }
  return r;
}

Norms measure_norms(const Eigen::MatrixXcd& h, const Labels& labels, int m_protect, const NormWeights& weights,
                    const Eigen::VectorXd& reference_diagonal, double eps0) {
  const auto dim = h.rows();
  Norms out;
  double drift = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a) {
    const int la = labels.level[a];
    const bool protected_row = la <= m_protect;
    double row_sum = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (a == b) continue;
      const double mag = std::abs(h(a, b));
      if (mag == 0.0) continue;
      const int lb = labels.level[b];
      const double momentum = std::exp(2.0 * weights.delta * std::abs(labels.site[a] - labels.site[b]));
      if (protected_row) {
        if (lb != la) row_sum += mag * weights.level_weight(lb) * momentum;
      } else if (lb > m_protect || lb == la) {
        row_sum += mag * momentum;
      }
    }
    if (protected_row) {
      out.gamma = std::max(out.gamma, row_sum);
      if (reference_diagonal.size() == dim && eps0 > 0.0) {
        drift = std::max(drift, std::abs(h(a, a).real() - reference_diagonal(a)) / eps0);
      }
    } else {
      const double scale = weights.s > 0.0 ? std::pow(double(la), weights.s + 1.0) + 1.0 : 1.0;
      out.delta = std::max(out.delta, row_sum / scale);
    }
  }
  out.delta = std::max(out.delta, drift);
  return out;
}

Eigen::MatrixXcd ReductionState::level_block(int m) const {
  const int start = index.index(m, -index.n_window());
  return h.block(start, start, index.sites(), index.sites());
}

ReductionState reduce(const FiberOperator& op, const ReductionOptions& options) {
  const IndexMap& idx = op.index;
  if (options.m_protect < 0 || options.m_protect > idx.m_max()) {
    throw Error(ErrorKind::Config, "protected window must satisfy 0 <= m_protect <= m_max");
  }
  if (options.max_iter < 1) throw Error(ErrorKind::Config, "max_iter must be positive");
  const Labels all = Labels::of(idx);

  std::vector<Block> blocks;
  for (const auto& group : site_components(op.h, idx)) {
    Block b;
    for (int m = 0; m <= idx.m_max(); ++m) {
      for (int n : group) b.rows.push_back(idx.index(m, n));
    }
    const int size = static_cast<int>(b.rows.size());
    b.labels = all.subset(b.rows);
    b.h.resize(size, size);
    b.reference.resize(size);
    for (int i = 0; i < size; ++i) {
      b.reference(i) = op.first_order_diagonal(b.rows[i]);
      for (int j = 0; j < size; ++j) b.h(i, j) = op.h(b.rows[i], b.rows[j]);
    }
    b.u = Eigen::MatrixXcd::Identity(size, size);
    blocks.push_back(std::move(b));
  }

  ReductionState state;
  state.xi = op.xi;
  state.b_c = op.b_c;
  state.beta = op.beta;
  state.eps0 = op.eps0;
  state.index = idx;
  state.m_protect = options.m_protect;

  for (int j = 1;; ++j) {
    IterationRecord rec;
    rec.j = j;
    rec.denominator_margin = kInf;
    std::vector<double> block_gamma(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      const Norms norms = measure_norms(b.h, b.labels, options.m_protect, options.weights, b.reference, op.eps0);
      block_gamma[bi] = norms.gamma;
      rec.gamma = std::max(rec.gamma, norms.gamma);
      rec.delta = std::max(rec.delta, norms.delta);
    }
    if (rec.gamma <= options.tol) {
      for (const auto& b : blocks) {
        rec.denominator_margin =
            std::min(rec.denominator_margin, margin_of(split(b.h, b.labels.level, options.m_protect), b.labels.level,
                                                       op.b_c));
      }
      state.history.push_back(rec);
      state.converged = true;
      break;
    }
    if (j > options.max_iter) {
      state.history.push_back(rec);
      std::ostringstream msg;
      msg << "gamma = " << rec.gamma << " after " << options.max_iter << " iterations at xi = " << op.xi;
      throw Error(ErrorKind::NoConvergence, msg.str());
    }
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      if (block_gamma[bi] <= options.tol) continue;
      auto& b = blocks[bi];
      double margin = kInf;
      const BlockSplit s = split(b.h, b.labels.level, options.m_protect);
      const Eigen::MatrixXcd w = solve_homological(s, b.labels.level, op.b_c, &margin);
      Rotation r = rotate(b.h, w);
      b.h = std::move(r.h);
      b.u += b.u * r.e;
      rec.w_norm = std::max(rec.w_norm, r.w_norm);
      rec.denominator_margin = std::min(rec.denominator_margin, margin);
    }
    state.history.push_back(rec);
  }

  const int dim = idx.dim();
  state.h = Eigen::MatrixXcd::Zero(dim, dim);
  state.u = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& b : blocks) {
    const int size = static_cast<int>(b.rows.size());
    for (int i = 0; i < size; ++i) {
      for (int k = 0; k < size; ++k) {
        state.h(b.rows[i], b.rows[k]) = b.h(i, k);
        state.u(b.rows[i], b.rows[k]) = b.u(i, k);
      }
    }
  }
  const double unitarity =
      (state.u.adjoint() * state.u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) {
    std::ostringstream msg;
    msg << "accumulated transformation fails unitarity check: " << unitarity;
    throw Error(ErrorKind::EigensolverFailure, msg.str());
  }
  return state;
}

}  // namespace landau
