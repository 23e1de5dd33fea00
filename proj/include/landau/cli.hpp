#pragma once

// Batch front end: configuration, pipeline orchestration and CSV output.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "landau/field_io.hpp"

namespace landau::cli {

struct EigfunConfig {
  int m = 0;
  int k = 0;
  double xi = 0.0;
  int n_dec = 2;
  double y_max = 8.0;
  int nx = 256;
  int ny = 512;
};

struct DiophantineConfig {
  double constant = 0.1;
  double kappa = 2.0;
  long n_max = 1000;
};

struct RunConfig {
  FieldSpec field;
  std::optional<double> eps0;  // overrides the couplings of the field
  std::optional<double> eps1;
  bool subtract_x_average = true;
  int m_max = 12;
  int n_window = 16;
  int quad_nodes = 0;
  int p_grid = 256;
  int xi_grid = 128;
  int m_protect = 3;
  double tol = 1e-12;
  int max_iter = 40;
  double tol_quad = 1e-10;
  double truncation_tol = 1e-10;
  double tail_tol = 1e-8;
  double norm_s = 0.0;
  double norm_delta = 0.0;
  std::string method = "reduced";
  int workers = 1;
  std::string out = "out";
  EigfunConfig eigfun;
  DiophantineConfig diophantine;
  double diag_xi = 0.0;
  bool family_norms = false;
  /// Resolved configuration as compact JSON, echoed into every output file.
  std::string echo;
};

/// Parse a JSON configuration. Relative field_file paths resolve against
/// `base_dir`. Throws Config or Parse errors.
RunConfig parse_config(const std::string& json_text, const std::string& base_dir, const std::string& source);
RunConfig load_config(const std::string& path);

/// Checks invariants and refreshes the echo string.
void finalize(RunConfig& config);

/// Each command writes its files into config.out and returns their paths.
std::vector<std::string> cmd_decompose(const RunConfig& config, std::ostream& log);
std::vector<std::string> cmd_spectrum(const RunConfig& config, std::ostream& log);
std::vector<std::string> cmd_eigfun(const RunConfig& config, std::ostream& log);
std::vector<std::string> cmd_diagnostics(const RunConfig& config, std::ostream& log);

/// Full command line; returns 0 on success, 2 for configuration or input
/// errors and 3 for numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace landau::cli
