#pragma once

// The reduced one-dimensional operator on a protected Landau level,
//
//   (H_{m,xi} g)(n) = d_m(beta (xi + n)) g(n) + sum_{K != 0} a_m(K, beta (xi + n)) g(n - K),
//
// read off reduced fibers, together with xi-sweeps of the spectrum, band
// intervals and their measure.

#include <Eigen/Dense>

#include <map>
#include <utility>
#include <vector>

#include "landau/fiber.hpp"
#include "landau/reduction.hpp"
#include "landau/spectral.hpp"

namespace landau {

/// Fiber and site at which the effective coefficients are read for p = i / P:
/// xi + n = p * flux with n = floor(p * flux).
struct PPoint {
  double p = 0.0;
  double xi = 0.0;
  int n = 0;
};

std::vector<PPoint> p_family(double flux, int n_points);

/// What extract_effective and the C^2 diagnostics need from one reduced
/// fiber; full matrices are not kept.
struct FiberSummary {
  PPoint point;
  IndexMap index;
  double beta = 0.0;
  int m_protect = 0;
  /// Level blocks of the reduced operator for m = 0..m_protect.
  std::vector<Eigen::MatrixXcd> level_blocks;
  /// Reduced-operator rows (m, point.n) for m = 0..m_protect.
  Eigen::MatrixXcd protected_rows;
  /// First-order diagonal B_c (1/2 + m) - eps0 A0_{m,m} for the same rows.
  Eigen::VectorXd reference;
  std::vector<IterationRecord> history;
};

FiberSummary summarize(const ReductionState& state, const FiberOperator& op, const PPoint& point);

/// Assemble and reduce the fibers of a p-family.
std::vector<FiberSummary> reduce_family(const GaugeData& gauge, const MatrixElementTable& table,
                                        const FiberOptions& fiber, const ReductionOptions& reduction,
                                        int n_points, int workers);

struct EffectiveOptions {
  /// Sites within this distance of the window edge are excluded from the
  /// covariance check; negative selects N / 2.
  int edge_margin = -1;
  double covariance_tol = 1e-9;
  bool check_covariance = true;
};

struct EffectiveOperator {
  int m = 0;
  double beta = 0.0;
  Eigen::VectorXd d;                  // d_m(i / P)
  std::map<int, Eigen::VectorXcd> a;  // a_m(K, i / P), K != 0
  /// Fit of max_p |a_m(K, p)| ~ C exp(-decay_rate |K|); infinite rate when
  /// fewer than two nonzero distances are available.
  double decay_rate = 0.0;
  double decay_prefactor = 0.0;
  double covariance_defect = 0.0;

  int n_points() const { return static_cast<int>(d.size()); }
};

/// Throws CovarianceViolation when entries at equal p = beta (xi + n) seen
/// from different fibers or sites disagree by more than covariance_tol.
EffectiveOperator extract_effective(const std::vector<FiberSummary>& family, int m, const EffectiveOptions& options = {});

/// C^2-in-p versions of the reduction norms over a p-family.
struct FamilyNorms {
  double gamma = 0.0;           // protected rows, off-level entries
  double diagonal_drift = 0.0;  // max_m ||d_m - first-order diagonal||_{C^2}
};

FamilyNorms family_norms(const std::vector<FiberSummary>& family, const NormWeights& weights);

enum class SweepMethod { Reduced, Dense };

struct SweepOptions {
  int xi_grid = 128;
  SweepMethod method = SweepMethod::Reduced;
  FiberOptions fiber;
  ReductionOptions reduction;
  int workers = 1;
  /// Neighbouring eigenvalues closer than this (but not equal) flag a
  /// possible band crossing.
  double crossing_tol = 1e-9;
  /// Samples of lambda_m whose p agree within p_tol must agree within
  /// value_tol.
  double lambda_p_tol = 1e-12;
  double lambda_value_tol = 1e-8;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct LevelSweep {
  int m = 0;
  /// curves[i][b]: b-th smallest eigenvalue attributed to level m at xi_i.
  std::vector<std::vector<double>> curves;
  std::vector<Interval> bands;  // merged, ascending
  double measure = 0.0;
  bool band_crossing = false;
  /// lambda_m samples (p, value), ascending in p, duplicates removed.
  std::vector<std::pair<double, double>> lambda;
  bool lambda_conflict = false;
  double lambda_conflict_size = 0.0;
};

struct SpectrumSweep {
  std::vector<double> xi;
  std::vector<LevelSweep> levels;  // m = 0..m_protect
  /// Largest iteration count used by the reduction across the grid.
  int max_iterations = 0;
};

SpectrumSweep sweep(const GaugeData& gauge, const MatrixElementTable& table, const SweepOptions& options);

/// Merge intervals into a sorted disjoint union.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);
double total_length(const std::vector<Interval>& intervals);

double band_measure(const SpectrumSweep& sweep, int m);

/// Linear fit of band measure against eps0.
LineFit fit_measure_law(const std::vector<double>& eps0, const std::vector<double>& measures);

struct MorseReport {
  int m = 0;
  int critical_points = 0;
  bool passed = false;
};

/// Counts sign changes of d/dp A0_{m,m}(p) on an n_points grid; passes with
/// exactly two.
MorseReport morse_check(const MatrixElementTable& table, int m, int n_points);

}  // namespace landau
