#pragma once

// Periodic magnetic fields on the unit lattice and their gauge potentials.
//
// The vector potential is taken in triangular form: the x-component depends on
// y only (eps0 * A0(y)) and the y-component carries all x-dependence
// (eps1 * A1(x, y)). With this choice
//
//   B = B_c + eps1 dA1/dx - eps0 dA0/dy.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "landau/fourier.hpp"

namespace landau {

/// Field strength B(x, y) as a finite Fourier series on the unit cell.
struct PeriodicField {
  Series2 coeffs;
};

/// Flux through one lattice cell in units of the flux quantum.
double flux(const PeriodicField& field);

struct GaugeData {
  double b_c = 0.0;
  double beta = 0.0;  // 2 pi / B_c
  double flux = 0.0;  // B_c / 2 pi
  double eps0 = 0.0;
  double eps1 = 0.0;
  Series1 a0;  // function of y, max-norm 1 (or empty)
  Series2 a1;  // function of (x, y), max-norm 1 (or empty)

  /// B_c + eps1 dA1/dx - eps0 dA0/dy.
  Series2 field() const;
};

struct GaugeOptions {
  /// Remove the x-average of A1. It is a pure gauge term (it has no x
  /// derivative), so removing it leaves the field unchanged.
  bool subtract_x_average = true;
  /// Rescale A0, A1 to max-norm 1 and fold the scale into eps0, eps1.
  bool normalize = true;
  /// Require eps1 < eps0 when both couplings are nonzero.
  bool require_ordering = true;
};

/// Split B into B_c plus a zero-flux part and build A0, A1 with max-norm 1.
/// Throws ZeroFlux for vanishing flux and Config for negative flux.
GaugeData decompose(const PeriodicField& field, const GaugeOptions& options = {});

/// Gauge data from potentials given directly. `a0`, `a1` are multiplied by
/// eps0, eps1 in the operator.
GaugeData make_gauge(double b_c, Series1 a0, Series2 a1, double eps0, double eps1,
                     const GaugeOptions& options = {});

/// Same potentials with new couplings (the unit-normalised A0, A1 are kept).
GaugeData with_couplings(GaugeData gauge, double eps0, double eps1);

struct DiophantineReport {
  double beta = 0.0;
  double kappa = 0.0;
  double constant = 0.0;
  /// min over 1 <= n <= n_max of dist(beta n, Z) * n^kappa.
  double min_value = 0.0;
  std::int64_t argmin = 0;
  bool violated = false;
  /// Convergents p/q of beta with q <= n_max.
  std::vector<std::pair<std::int64_t, std::int64_t>> convergents;
};

DiophantineReport check_diophantine(double beta, double constant, double kappa, std::int64_t n_max);

}  // namespace landau
