#include "landau/eigenfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "landau/error.hpp"
#include "landau/hermite.hpp"
#include "landau/spectral.hpp"

namespace landau {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-site radial profiles g_n(y) = sum_l f(l, n) Psi_{xi+n,l}(y), or their y
// derivatives.
std::vector<std::complex<double>> site_profiles(const EigenfunctionField& f, double y, bool derivative) {
  const IndexMap& idx = f.index;
  const double sqrt_b = std::sqrt(f.b_c);
  const double norm = std::pow(f.b_c, 0.25) * (derivative ? sqrt_b : 1.0);
  std::vector<std::complex<double>> out(idx.sites());
  ArrayX<double> w(idx.m_max() + 2);
  for (int n = -idx.n_window(); n <= idx.n_window(); ++n) {
    omega_sequence(idx.m_max() + 1, sqrt_b * (y - f.beta * (f.xi + n)), w);
    std::complex<double> sum{};
    for (int l = 0; l <= idx.m_max(); ++l) {
      double basis = w(l);
      if (derivative) {
        basis = -std::sqrt((l + 1) / 2.0) * w(l + 1);
        if (l > 0) basis += std::sqrt(l / 2.0) * w(l - 1);
      }
      sum += f.coeffs(idx.index(l, n)) * basis;
    }
    out[n + idx.n_window()] = norm * sum;
  }
  return out;
}

std::complex<double> combine(const EigenfunctionField& f, const std::vector<std::complex<double>>& profiles,
                             double x) {
  std::complex<double> sum{};
  for (int n = -f.index.n_window(); n <= f.index.n_window(); ++n) {
    sum += std::polar(1.0, kTwoPi * (f.xi + n) * x) * profiles[n + f.index.n_window()];
  }
  return sum;
}

}  // namespace

std::complex<double> EigenfunctionField::value(double x, double y) const {
  return combine(*this, site_profiles(*this, y, false), x);
}

std::complex<double> EigenfunctionField::dy(double x, double y) const {
  return combine(*this, site_profiles(*this, y, true), x);
}

Eigen::MatrixXcd EigenfunctionField::grid(int nx, int ny, double y_max) const {
  if (nx < 1 || ny < 2) throw Error(ErrorKind::Config, "grid needs nx >= 1 and ny >= 2");
  Eigen::MatrixXcd out(ny, nx);
  // exp(2 pi i (xi + n) x) for every x and site, shared by all rows.
  Eigen::MatrixXcd phases(index.sites(), nx);
  for (int n = -index.n_window(); n <= index.n_window(); ++n) {
    for (int i = 0; i < nx; ++i) {
      phases(n + index.n_window(), i) = std::polar(1.0, kTwoPi * (xi + n) * (double(i) / nx));
    }
  }
  for (int j = 0; j < ny; ++j) {
    const double y = -y_max + 2.0 * y_max * j / (ny - 1);
    const auto profiles = site_profiles(*this, y, false);
    const Eigen::Map<const Eigen::RowVectorXcd> row(profiles.data(), index.sites());
    out.row(j) = row * phases;
  }
  return out;
}

EigenfunctionField reconstruct(const FiberOperator& op, const ReductionState& state, int m, int k,
                               const EigenfunctionOptions& options) {
  const IndexMap& idx = state.index;
  if (m < 0 || m > state.m_protect) {
    std::ostringstream msg;
    msg << "level " << m << " is outside the protected window 0.." << state.m_protect;
    throw Error(ErrorKind::Config, msg.str());
  }
  if (std::abs(k) > idx.n_window()) throw Error(ErrorKind::Config, "site k lies outside the momentum window");

  const Eigen::MatrixXcd block = state.level_block(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigensolverFailure, "level block eigensolver failed");
  const int site = k + idx.n_window();
  Eigen::Index best = 0;
  solver.eigenvectors().row(site).cwiseAbs2().maxCoeff(&best);
  const double target = solver.eigenvalues()(best);
  const double cluster_tol = 1e-10 * std::max(1.0, std::abs(target));
  std::vector<Eigen::Index> cluster;
  for (Eigen::Index c = 0; c < solver.eigenvalues().size(); ++c) {
    if (std::abs(solver.eigenvalues()(c) - target) <= cluster_tol) cluster.push_back(c);
  }
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(idx.sites());
  for (Eigen::Index c : cluster) {
    const auto v = solver.eigenvectors().col(c);
    g += v * std::conj(v(site));
  }
  g.normalize();

  EigenfunctionField f;
  f.m = m;
  f.k = k;
  f.xi = state.xi;
  f.b_c = state.b_c;
  f.beta = state.beta;
  f.index = idx;
  f.lambda = (g.adjoint() * block * g)(0).real();
  f.coeffs = state.u.middleCols(idx.index(m, -idx.n_window()), idx.sites()) * g;
  f.coeffs.normalize();

  f.residual = (op.h * f.coeffs - f.lambda * f.coeffs).norm();
  double shell = 0.0;
  for (int i = 0; i < idx.dim(); ++i) {
    if (idx.level(i) == idx.m_max() || std::abs(idx.site(i)) == idx.n_window()) shell += std::norm(f.coeffs(i));
  }
  f.tail = shell;
  if (f.tail > options.tail_tol) {
    std::ostringstream msg;
    msg << "outermost shell carries " << f.tail << " of the norm (tolerance " << options.tail_tol
        << "); enlarge m_max or n_window";
    throw Error(ErrorKind::TailTooLarge, msg.str());
  }
  return f;
}

DecayReport decay_report(const EigenfunctionField& field, int n_dec, double y_max, int nx, int ny) {
  if (y_max <= 0.0 || ny < 3) throw Error(ErrorKind::Config, "decay report needs y_max > 0 and ny >= 3");
  DecayReport r;
  r.n_dec = n_dec;
  r.y_max = y_max;
  const Eigen::MatrixXcd values = field.grid(nx, ny, y_max);
  std::vector<double> ys(ny), envelope(ny), weighted(ny);
  for (int j = 0; j < ny; ++j) {
    ys[j] = -y_max + 2.0 * y_max * j / (ny - 1);
    envelope[j] = values.row(j).cwiseAbs().maxCoeff();
    weighted[j] = envelope[j] * (std::pow(ys[j], 2 * n_dec) + 1.0);
  }
  const auto top = std::max_element(weighted.begin(), weighted.end());
  r.sup_weighted = *top;
  r.argmax_y = ys[top - weighted.begin()];
  r.edge_value = std::max(weighted.front(), weighted.back());
  r.bounded = std::abs(r.argmax_y) <= 0.9 * y_max && r.edge_value <= 1e-3 * r.sup_weighted;

  std::vector<double> lx, ly;
  for (int j = 0; j < ny; ++j) {
    if (std::abs(ys[j]) >= y_max / 2 && envelope[j] > 0.0) {
      lx.push_back(std::log(std::abs(ys[j])));
      ly.push_back(std::log(envelope[j]));
    }
  }
  r.slope = lx.size() >= 2 ? fit_line(lx, ly).slope : -std::numeric_limits<double>::infinity();

  // Growth of the weighted envelope towards either end of the y-range.
  const int edge = std::max(2, ny / 20);
  bool grows_right = true, grows_left = true;
  for (int j = ny - edge; j < ny; ++j) grows_right = grows_right && weighted[j] > weighted[j - 1];
  for (int j = 0; j + 1 < edge + 1; ++j) grows_left = grows_left && weighted[j] > weighted[j + 1];
  r.edge_growth = grows_right || grows_left;
  return r;
}

Summability summability(const EigenfunctionField& field, double delta) {
  const IndexMap& idx = field.index;
  Summability s;
  double shell = 0.0;
  for (int i = 0; i < idx.dim(); ++i) {
    const int l = idx.level(i);
    const int n = idx.site(i);
    const double term = std::abs(field.coeffs(i)) * (double(l) * l + 1.0) * std::exp(2.0 * delta * std::abs(n));
    s.weighted_sum += term;
    if (l == idx.m_max() || std::abs(n) == idx.n_window()) shell += term;
  }
  s.tail_ratio = s.weighted_sum > 0.0 ? shell / s.weighted_sum : 0.0;
  return s;
}

}  // namespace landau
