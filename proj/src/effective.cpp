#include "landau/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "landau/error.hpp"
#include "landau/parallel.hpp"

namespace landau {

namespace {

double frac(double x) {
  const double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

int max_abs_site(const std::vector<FiberSummary>& family) {
  int worst = 0;
  for (const auto& f : family) worst = std::max(worst, std::abs(f.point.n));
  return worst;
}

// Site carrying the largest share of a vector laid out over sites -N..N.
int heaviest_site(const Eigen::VectorXcd& v, int n_window) {
  Eigen::Index best = 0;
  v.cwiseAbs2().maxCoeff(&best);
  return static_cast<int>(best) - n_window;
}

struct XiResult {
  std::vector<std::vector<double>> values;  // per level, ascending
  std::vector<std::vector<int>> sites;      // heaviest site per eigenvalue
  int iterations = 0;
};

XiResult solve_xi(double xi, const GaugeData& gauge, const MatrixElementTable& table, const SweepOptions& options) {
  const FiberOperator op = assemble(xi, gauge, table, options.fiber);
  const IndexMap& idx = op.index;
  const int levels = options.reduction.m_protect + 1;
  XiResult r;
  r.values.resize(levels);
  r.sites.resize(levels);
  if (options.method == SweepMethod::Reduced) {
    const ReductionState state = reduce(op, options.reduction);
    r.iterations = static_cast<int>(state.history.size());
    for (int m = 0; m < levels; ++m) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(state.level_block(m));
      if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigensolverFailure, "level block eigensolver failed");
      for (int c = 0; c < idx.sites(); ++c) {
        r.values[m].push_back(solver.eigenvalues()(c));
        r.sites[m].push_back(heaviest_site(solver.eigenvectors().col(c), idx.n_window()));
      }
    }
    return r;
  }
  const Spectrum spectrum = dense_spectrum(op);
  const Attribution attribution = attribute_levels(spectrum, idx);
  for (Eigen::Index c = 0; c < spectrum.values.size(); ++c) {
    const int m = attribution.level[c];
    if (m < 0 || m >= levels) continue;
    const Eigen::VectorXcd part = spectrum.vectors.col(c).segment(idx.index(m, -idx.n_window()), idx.sites());
    r.values[m].push_back(spectrum.values(c));
    r.sites[m].push_back(heaviest_site(part, idx.n_window()));
  }
  return r;
}

void collect_lambda(LevelSweep& level, std::vector<std::pair<double, double>> samples, const SweepOptions& options) {
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<double, double>> kept;
  for (const auto& s : samples) {
    if (!kept.empty() && s.first - kept.back().first <= options.lambda_p_tol) {
      const double diff = std::abs(s.second - kept.back().second);
      level.lambda_conflict_size = std::max(level.lambda_conflict_size, diff);
      continue;
    }
    kept.push_back(s);
  }
  // Samples just below 1 coincide with samples near 0.
  while (kept.size() > 1 && kept.back().first - 1.0 + options.lambda_p_tol >= kept.front().first) {
    level.lambda_conflict_size =
        std::max(level.lambda_conflict_size, std::abs(kept.back().second - kept.front().second));
    kept.pop_back();
  }
  level.lambda_conflict = level.lambda_conflict_size > options.lambda_value_tol;
  level.lambda = std::move(kept);
}

}  // namespace

std::vector<PPoint> p_family(double flux, int n_points) {
  if (n_points < 1) throw Error(ErrorKind::Config, "p-grid needs at least one point");
  std::vector<PPoint> out(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double p = double(i) / n_points;
    const double x = p * flux;
    const double n = std::floor(x);
    out[i] = {p, x - n, static_cast<int>(n)};
  }
  return out;
}

FiberSummary summarize(const ReductionState& state, const FiberOperator& op, const PPoint& point) {
  FiberSummary s;
  s.point = point;
  s.index = state.index;
  s.beta = state.beta;
  s.m_protect = state.m_protect;
  s.history = state.history;
  const int levels = state.m_protect + 1;
  s.protected_rows.resize(levels, state.index.dim());
  s.reference.resize(levels);
  for (int m = 0; m < levels; ++m) {
    s.level_blocks.push_back(state.level_block(m));
    const int row = state.index.index(m, point.n);
    s.protected_rows.row(m) = state.h.row(row);
    s.reference(m) = op.first_order_diagonal(row);
  }
  return s;
}

std::vector<FiberSummary> reduce_family(const GaugeData& gauge, const MatrixElementTable& table,
                                        const FiberOptions& fiber, const ReductionOptions& reduction,
                                        int n_points, int workers) {
  const auto points = p_family(gauge.flux, n_points);
  for (const auto& pt : points) {
    if (std::abs(pt.n) > fiber.n_window) throw Error(ErrorKind::Config, "flux too large for the momentum window");
  }
  return parallel_map(n_points, workers, [&](int i) {
    const FiberOperator op = assemble(points[i].xi, gauge, table, fiber);
    return summarize(reduce(op, reduction), op, points[i]);
  });
}

EffectiveOperator extract_effective(const std::vector<FiberSummary>& family, int m, const EffectiveOptions& options) {
  if (family.empty()) throw Error(ErrorKind::Config, "empty p-family");
  const IndexMap& idx = family.front().index;
  if (m < 0 || m > family.front().m_protect) throw Error(ErrorKind::Config, "level outside the protected window");
  const int n_window = idx.n_window();
  const int count = static_cast<int>(family.size());

  EffectiveOperator eff;
  eff.m = m;
  eff.beta = family.front().beta;
  eff.d.resize(count);
  const int k_range = n_window - max_abs_site(family);
  for (int i = 0; i < count; ++i) {
    const auto& f = family[i];
    const int c = f.point.n + n_window;
    eff.d(i) = f.level_blocks[m](c, c).real();
    for (int k = -k_range; k <= k_range; ++k) {
      if (k == 0) continue;
      auto& series = eff.a[k];
      if (series.size() == 0) series = Eigen::VectorXcd::Zero(count);
      series(i) = f.level_blocks[m](c, c - k);
    }
  }

  // Decay of the off-diagonal coefficients with |K|.
  double scale = std::max(1.0, eff.d.cwiseAbs().maxCoeff());
  std::vector<double> ks, logs;
  for (int k = 1; k <= k_range; ++k) {
    double amp = 0.0;
    for (int sign : {1, -1}) {
      const auto it = eff.a.find(sign * k);
      if (it != eff.a.end()) amp = std::max(amp, it->second.cwiseAbs().maxCoeff());
    }
    if (amp > 1e-13 * scale) {
      ks.push_back(k);
      logs.push_back(std::log(amp));
    }
  }
  if (ks.size() >= 2) {
    const LineFit fit = fit_line(ks, logs);
    eff.decay_rate = -fit.slope;
    eff.decay_prefactor = std::exp(fit.intercept);
  } else {
    eff.decay_rate = std::numeric_limits<double>::infinity();
    eff.decay_prefactor = ks.empty() ? 0.0 : std::exp(logs.front());
  }

  if (options.check_covariance) {
    const int margin = options.edge_margin >= 0 ? options.edge_margin : n_window / 2;
    const TrigInterpolant d_interp(eff.d.cast<Complex>());
    std::map<int, TrigInterpolant> a_interp;
    for (const auto& [k, series] : eff.a) a_interp.emplace(k, TrigInterpolant(series));
    for (const auto& f : family) {
      for (int n = -(n_window - margin); n <= n_window - margin; ++n) {
        const double p = frac(eff.beta * (f.point.xi + n));
        const int c = n + n_window;
        eff.covariance_defect =
            std::max(eff.covariance_defect, std::abs(f.level_blocks[m](c, c) - d_interp(p)));
        for (const auto& [k, interp] : a_interp) {
          if (std::abs(n - k) > n_window) continue;
          eff.covariance_defect = std::max(eff.covariance_defect, std::abs(f.level_blocks[m](c, c - k) - interp(p)));
        }
      }
    }
    if (eff.covariance_defect > options.covariance_tol) {
      std::ostringstream msg;
      msg << "level " << m << " entries at equal p disagree by " << eff.covariance_defect;
      throw Error(ErrorKind::CovarianceViolation, msg.str());
    }
  }
  return eff;
}

FamilyNorms family_norms(const std::vector<FiberSummary>& family, const NormWeights& weights) {
  FamilyNorms out;
  if (family.empty()) return out;
  const IndexMap& idx = family.front().index;
  const int levels = family.front().m_protect + 1;
  const int count = static_cast<int>(family.size());
  const int k_range = idx.n_window() - max_abs_site(family);
  for (int m = 0; m < levels; ++m) {
    double row = 0.0;
    for (int l = 0; l <= idx.m_max(); ++l) {
      if (l == m) continue;
      for (int k = -k_range; k <= k_range; ++k) {
        Eigen::VectorXcd samples(count);
        for (int i = 0; i < count; ++i) {
          samples(i) = family[i].protected_rows(m, idx.index(l, family[i].point.n + k));
        }
        if (samples.cwiseAbs().maxCoeff() == 0.0) continue;
        row += c2_norm(samples) * weights.level_weight(l) * std::exp(2.0 * weights.delta * std::abs(k));
      }
    }
    out.gamma = std::max(out.gamma, row);
    Eigen::VectorXd drift(count);
    for (int i = 0; i < count; ++i) {
      drift(i) = family[i].protected_rows(m, idx.index(m, family[i].point.n)).real() - family[i].reference(m);
    }
    out.diagonal_drift = std::max(out.diagonal_drift, c2_norm(drift));
  }
  return out;
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  for (const auto& iv : intervals) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

double total_length(const std::vector<Interval>& intervals) {
  double sum = 0.0;
  for (const auto& iv : intervals) sum += iv.hi - iv.lo;
  return sum;
}

SpectrumSweep sweep(const GaugeData& gauge, const MatrixElementTable& table, const SweepOptions& options) {
  if (options.xi_grid < 1) throw Error(ErrorKind::Config, "xi grid needs at least one point");
  SpectrumSweep out;
  out.xi.resize(options.xi_grid);
  for (int i = 0; i < options.xi_grid; ++i) out.xi[i] = double(i) / options.xi_grid;

  const auto results = parallel_map(options.xi_grid, options.workers,
                                    [&](int i) {
                                      try {
                                        return solve_xi(out.xi[i], gauge, table, options);
                                      } catch (const Error& e) {
                                        std::ostringstream msg;
                                        msg.precision(17);
                                        msg << "at xi = " << out.xi[i] << ": " << e.what();
                                        throw Error(e.kind(), msg.str());
                                      }
                                    });

  const int levels = options.reduction.m_protect + 1;
  const double scale = gauge.b_c * (levels + 0.5);
  for (int m = 0; m < levels; ++m) {
    LevelSweep level;
    level.m = m;
    std::vector<std::pair<double, double>> samples;
    std::size_t widest = 0;
    for (int i = 0; i < options.xi_grid; ++i) {
      const auto& values = results[i].values[m];
      level.curves.push_back(values);
      widest = std::max(widest, values.size());
      for (std::size_t c = 0; c + 1 < values.size(); ++c) {
        const double gap = values[c + 1] - values[c];
        if (gap > 1e-12 * scale && gap < options.crossing_tol) level.band_crossing = true;
      }
      for (std::size_t c = 0; c < values.size(); ++c) {
        samples.emplace_back(frac(gauge.beta * (out.xi[i] + results[i].sites[m][c])), values[c]);
      }
      out.max_iterations = std::max(out.max_iterations, results[i].iterations);
    }
    std::vector<Interval> hulls;
    for (std::size_t b = 0; b < widest; ++b) {
      Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
      for (const auto& values : level.curves) {
        if (b >= values.size()) continue;
        iv.lo = std::min(iv.lo, values[b]);
        iv.hi = std::max(iv.hi, values[b]);
      }
      hulls.push_back(iv);
    }
    level.bands = merge_intervals(std::move(hulls));
    level.measure = total_length(level.bands);
    collect_lambda(level, std::move(samples), options);
    out.levels.push_back(std::move(level));
  }
  return out;
}

double band_measure(const SpectrumSweep& sweep, int m) {
  for (const auto& level : sweep.levels) {
    if (level.m == m) return level.measure;
  }
  throw Error(ErrorKind::Config, "level not part of the sweep");
}

LineFit fit_measure_law(const std::vector<double>& eps0, const std::vector<double>& measures) {
  return fit_line(eps0, measures);
}

MorseReport morse_check(const MatrixElementTable& table, int m, int n_points) {
  if (m < 0 || m > table.l_max()) throw Error(ErrorKind::Config, "level outside the table");
  const Eigen::VectorXcd samples = table.sample(Family::A0, 0, m, m, n_points);
  const Eigen::VectorXd derivative = spectral_derivative(samples, 1).real();
  MorseReport r;
  r.m = m;
  const double scale = derivative.cwiseAbs().maxCoeff();
  r.critical_points = scale > 0.0 ? cyclic_sign_changes(derivative, 1e-10 * scale) : 0;
  r.passed = r.critical_points == 2;
  return r;
}

}  // namespace landau
