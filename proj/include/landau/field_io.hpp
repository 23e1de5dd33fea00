#pragma once

// Field input, either as a text file or as a JSON object.
//
// Text format (one directive per line, '#' starts a comment):
//
//   flux 1              constant part as a flux (B_c = 2 pi flux), or
//   bc 6.283185307      constant part as a field value
//   eps0 0.01           couplings; only together with [A0]/[A1]
//   eps1 0.005
//   [B]                 Fourier modes of B: "j k re im" for exp(2 pi i (j x + k y))
//   [A0]                modes of A0(y): "0 k re im"
//   [A1]                modes of A1(x, y): "j k re im"
//
// A file gives either [B] or potentials, not both. Repeated modes add up.

#include <iosfwd>
#include <optional>
#include <string>

#include "landau/field_model.hpp"

namespace landau {

struct FieldSpec {
  enum class Kind { Field, Potentials };
  Kind kind = Kind::Field;
  std::optional<double> b_c;  // from "flux" or "bc"
  Series2 b;
  Series1 a0;
  Series2 a1;
  double eps0 = 1.0;
  double eps1 = 1.0;
};

/// Throws Parse errors naming `source` and the line number.
FieldSpec parse_field(std::istream& in, const std::string& source);
FieldSpec parse_field_file(const std::string& path);

/// Resolve to gauge data: [B] input goes through decompose (a "flux"/"bc"
/// line adds to the constant mode), potentials through make_gauge.
GaugeData to_gauge(const FieldSpec& spec, const GaugeOptions& options = {});

}  // namespace landau
