#include "landau/matrix_elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "landau/error.hpp"
#include "landau/hermite.hpp"

namespace landau {

namespace {

constexpr int kMaxNodes = 4096;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Overlaps int exp(i omega u) Omega_a(u + s) Omega_b(u) du for a, b <= order,
// evaluated in the symmetric variable v = u + s/2 so both factors share the
// Gaussian exp(-v^2).
class OverlapEngine {
 public:
  OverlapEngine(int order, int n_nodes) : order_(order), rule_(gauss_hermite_rule<double>(n_nodes)) {}

  struct Shifted {
    double s = 0.0;
    Eigen::MatrixXd plus;   // Omega_a(v_i + s/2)
    Eigen::MatrixXd minus;  // Omega_b(v_i - s/2)
  };

  Shifted tabulate(double s) const {
    Shifted t;
    t.s = s;
    const int n = rule_.size();
    t.plus.resize(n, order_ + 1);
    t.minus.resize(n, order_ + 1);
    ArrayX<double> w(order_ + 1);
    for (int i = 0; i < n; ++i) {
      omega_sequence(order_, rule_.nodes(i) + s / 2, w);
      t.plus.row(i) = w.matrix().transpose();
      omega_sequence(order_, rule_.nodes(i) - s / 2, w);
      t.minus.row(i) = w.matrix().transpose();
    }
    return t;
  }

  MatrixXcd overlap(const Shifted& t, double omega) const {
    const int n = rule_.size();
    Eigen::VectorXcd weights(n);
    for (int i = 0; i < n; ++i) {
      weights(i) = rule_.scaled_weights(i) * std::polar(1.0, omega * (rule_.nodes(i) - t.s / 2));
    }
    return t.plus.transpose().cast<Complex>() * weights.asDiagonal() * t.minus.cast<Complex>();
  }

 private:
  int order_;
  QuadratureRule<double> rule_;
};

// Ladder combinations; S has size (l_max + 2)^2, results (l_max + 1)^2.
MatrixXcd times_u_right(const MatrixXcd& s, int l_max) {
  // int g Omega_l (u Omega_m) = sqrt(m/2) S(l, m-1) + sqrt((m+1)/2) S(l, m+1)
  MatrixXcd out = MatrixXcd::Zero(l_max + 1, l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    for (int m = 0; m <= l_max; ++m) {
      Complex v = std::sqrt((m + 1) / 2.0) * s(l, m + 1);
      if (m > 0) v += std::sqrt(m / 2.0) * s(l, m - 1);
      out(l, m) = v;
    }
  }
  return out;
}

MatrixXcd wronskian(const MatrixXcd& s, int l_max) {
  // Omega_l'(u+s) Omega_m(u) - Omega_l(u+s) Omega_m'(u) integrated against g.
  MatrixXcd out = MatrixXcd::Zero(l_max + 1, l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    for (int m = 0; m <= l_max; ++m) {
      Complex v = -std::sqrt((l + 1) / 2.0) * s(l + 1, m) + std::sqrt((m + 1) / 2.0) * s(l, m + 1);
      if (l > 0) v += std::sqrt(l / 2.0) * s(l - 1, m);
      if (m > 0) v -= std::sqrt(m / 2.0) * s(l, m - 1);
      out(l, m) = v;
    }
  }
  return out;
}

struct Families {
  MatrixTrigPoly tilde_a0;
  MatrixTrigPoly a0;
  std::map<int, MatrixTrigPoly> tilde_a1;
  std::map<int, MatrixTrigPoly> hat_a1;
};

Families compute_families(const GaugeData& gauge, int l_max, int n_nodes) {
  const int size = l_max + 1;
  const double sqrt_b = std::sqrt(gauge.b_c);
  const OverlapEngine engine(l_max + 1, n_nodes);
  Families f;
  f.tilde_a0 = MatrixTrigPoly(size);
  f.a0 = MatrixTrigPoly(size);

  const auto zero_shift = engine.tabulate(0.0);
  const Series1 a0_sq = gauge.a0 * gauge.a0;
  for (const auto& [q, c] : a0_sq.coeffs()) {
    const MatrixXcd s = engine.overlap(zero_shift, kTwoPi * q / sqrt_b);
    f.tilde_a0.add(q, c * s.topLeftCorner(size, size));
  }
  for (const auto& [q, c] : gauge.a0.coeffs()) {
    const MatrixXcd s = engine.overlap(zero_shift, kTwoPi * q / sqrt_b);
    f.a0.add(q, (c * sqrt_b) * times_u_right(s, l_max));
  }

  const Series2 a1_sq = gauge.a1 * gauge.a1;
  for (int k : a1_sq.x_modes()) {
    const Series1 mode = a1_sq.x_mode(k);
    const auto shifted = engine.tabulate(kTwoPi * k / sqrt_b);
    MatrixTrigPoly poly(size);
    for (const auto& [q, c] : mode.coeffs()) {
      const MatrixXcd s = engine.overlap(shifted, kTwoPi * q / sqrt_b);
      poly.add(q, c * s.topLeftCorner(size, size));
    }
    if (!poly.empty()) f.tilde_a1.emplace(k, std::move(poly));
  }
  for (int k : gauge.a1.x_modes()) {
    const Series1 mode = gauge.a1.x_mode(k);
    const auto shifted = engine.tabulate(kTwoPi * k / sqrt_b);
    MatrixTrigPoly poly(size);
    for (const auto& [q, c] : mode.coeffs()) {
      const MatrixXcd s = engine.overlap(shifted, kTwoPi * q / sqrt_b);
      poly.add(q, (c * Complex(0.0, -sqrt_b)) * wronskian(s, l_max));
    }
    if (!poly.empty()) f.hat_a1.emplace(k, std::move(poly));
  }
  return f;
}

double poly_change(const MatrixTrigPoly& a, const MatrixTrigPoly& b) {
  double worst = 0.0;
  for (const auto& [q, ca] : a.terms()) {
    const auto it = b.terms().find(q);
    const MatrixXcd diff = it == b.terms().end() ? ca : MatrixXcd(ca - it->second);
    for (Eigen::Index i = 0; i < diff.size(); ++i) {
      worst = std::max(worst, std::abs(diff(i)) / std::max(1.0, std::abs(ca(i))));
    }
  }
  return worst;
}

double map_change(const std::map<int, MatrixTrigPoly>& a, const std::map<int, MatrixTrigPoly>& b) {
  double worst = 0.0;
  for (const auto& [k, pa] : a) {
    const auto it = b.find(k);
    worst = std::max(worst, it == b.end() ? pa.bound() : poly_change(pa, it->second));
  }
  return worst;
}

const MatrixTrigPoly* find_poly(const std::map<int, MatrixTrigPoly>& m, int k) {
  const auto it = m.find(k);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

void MatrixTrigPoly::add(int q, const MatrixXcd& coeff) {
  if (coeff.size() == 0 || coeff.cwiseAbs().maxCoeff() == 0.0) return;
  auto it = terms_.find(q);
  if (it == terms_.end()) {
    terms_.emplace(q, coeff);
  } else {
    it->second += coeff;
  }
}

MatrixXcd MatrixTrigPoly::operator()(double p) const {
  MatrixXcd out = MatrixXcd::Zero(size_, size_);
  for (const auto& [q, c] : terms_) out += std::polar(1.0, kTwoPi * q * p) * c;
  return out;
}

Complex MatrixTrigPoly::entry(int l, int m, double p) const {
  Complex sum{};
  for (const auto& [q, c] : terms_) sum += std::polar(1.0, kTwoPi * q * p) * c(l, m);
  return sum;
}

double MatrixTrigPoly::bound() const {
  double b = 0.0;
  for (const auto& [q, c] : terms_) b += c.cwiseAbs().maxCoeff();
  return b;
}

MatrixElementTable MatrixElementTable::build(const GaugeData& gauge, const TableOptions& options) {
  if (options.l_max < 0) throw Error(ErrorKind::Config, "l_max must be non-negative");
  if (gauge.b_c <= 0.0) throw Error(ErrorKind::ZeroFlux, "matrix elements need B_c > 0");
  MatrixElementTable t;
  t.l_max_ = options.l_max;

  // With n_nodes = 0 the node count starts at the default and doubles until
  // the doubling check passes; an explicit count is checked once.
  const bool adaptive = options.n_nodes <= 0;
  int nodes = adaptive ? default_node_count(options.l_max + 1) : options.n_nodes;
  Families coarse = compute_families(gauge, t.l_max_, nodes);
  for (;;) {
    Families fine = compute_families(gauge, t.l_max_, 2 * nodes);
    double change = std::max(poly_change(coarse.tilde_a0, fine.tilde_a0), poly_change(coarse.a0, fine.a0));
    change = std::max(change, map_change(coarse.tilde_a1, fine.tilde_a1));
    change = std::max(change, map_change(coarse.hat_a1, fine.hat_a1));
    change = std::max(change, map_change(fine.tilde_a1, coarse.tilde_a1));
    change = std::max(change, map_change(fine.hat_a1, coarse.hat_a1));
    t.quadrature_change_ = change;
    if (change <= options.tol_quad) break;
    if (!adaptive || 2 * nodes > kMaxNodes) {
      std::ostringstream msg;
      msg << "doubling " << nodes << " quadrature nodes changed a matrix element by " << change << " > "
          << options.tol_quad << "; raise quad_nodes";
      throw Error(ErrorKind::QuadratureUnderResolved, msg.str());
    }
    nodes *= 2;
    coarse = std::move(fine);
  }
  t.n_nodes_ = nodes;
  t.tilde_a0_ = std::move(coarse.tilde_a0);
  t.a0_ = std::move(coarse.a0);
  t.tilde_a1_ = std::move(coarse.tilde_a1);
  t.hat_a1_ = std::move(coarse.hat_a1);
  return t;
}

int MatrixElementTable::k_max() const {
  int k_max = 0;
  for (const auto& [k, poly] : tilde_a1_) k_max = std::max(k_max, std::abs(k));
  for (const auto& [k, poly] : hat_a1_) k_max = std::max(k_max, std::abs(k));
  return k_max;
}

const MatrixTrigPoly* MatrixElementTable::tilde_a1(int k) const { return find_poly(tilde_a1_, k); }
const MatrixTrigPoly* MatrixElementTable::hat_a1(int k) const { return find_poly(hat_a1_, k); }

Complex MatrixElementTable::value(Family family, int k, int l, int m, double p) const {
  switch (family) {
    case Family::TildeA0: return tilde_a0_.entry(l, m, p);
    case Family::A0: return a0_.entry(l, m, p);
    case Family::TildeA1: {
      const auto* poly = tilde_a1(k);
      return poly ? poly->entry(l, m, p) : Complex{};
    }
    case Family::HatA1: {
      const auto* poly = hat_a1(k);
      return poly ? poly->entry(l, m, p) : Complex{};
    }
  }
  return {};
}

Eigen::VectorXcd MatrixElementTable::sample(Family family, int k, int l, int m, int n_points) const {
  Eigen::VectorXcd out(n_points);
  for (int i = 0; i < n_points; ++i) out(i) = value(family, k, l, m, double(i) / n_points);
  return out;
}

double MatrixElementTable::symmetry_defect(int n_points) const {
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double p = double(i) / n_points;
    for (const auto* poly : {&tilde_a0_, &a0_}) {
      const MatrixXcd v = (*poly)(p);
      worst = std::max(worst, (v - v.adjoint()).cwiseAbs().maxCoeff());
    }
    for (const auto* family : {&tilde_a1_, &hat_a1_}) {
      for (const auto& [k, poly] : *family) {
        const MatrixXcd v = poly(p);
        const auto* partner = find_poly(*family, -k);
        const MatrixXcd w = partner ? (*partner)(p - beta_ * k) : MatrixXcd::Zero(v.rows(), v.cols());
        worst = std::max(worst, (v - w.adjoint()).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

namespace {

MatrixElementTable table_for(int l, int m, const GaugeData& gauge, int n_nodes) {
  if (l < 0 || m < 0) throw Error(ErrorKind::Config, "Landau indices must be non-negative");
  TableOptions options;
  options.l_max = std::max(l, m);
  options.n_nodes = n_nodes;
  return MatrixElementTable::build(gauge, options);
}

}  // namespace

double a0_element(int l, int m, double p, const GaugeData& gauge, int n_nodes) {
  return table_for(l, m, gauge, n_nodes).value(Family::A0, 0, l, m, p).real();
}

double a0_sq_element(int l, int m, double p, const GaugeData& gauge, int n_nodes) {
  return table_for(l, m, gauge, n_nodes).value(Family::TildeA0, 0, l, m, p).real();
}

Complex a1_hat_element(int k, int l, int m, double p, const GaugeData& gauge, int n_nodes) {
  return table_for(l, m, gauge, n_nodes).value(Family::HatA1, k, l, m, p);
}

Complex a1_sq_element(int k, int l, int m, double p, const GaugeData& gauge, int n_nodes) {
  return table_for(l, m, gauge, n_nodes).value(Family::TildeA1, k, l, m, p);
}

}  // namespace landau
