#include "landau/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "landau/effective.hpp"
#include "landau/eigenfunctions.hpp"
#include "landau/error.hpp"
#include "landau/fiber.hpp"
#include "landau/matrix_elements.hpp"
#include "landau/reduction.hpp"

namespace landau::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV file with the version and resolved-config header lines.
class Csv {
 public:
  Csv(const RunConfig& config, const std::string& name, const std::vector<std::string>& extra_header,
      const std::string& columns)
      : path_((fs::path(config.out) / name).string()), out_(path_) {
    if (!out_) throw Error(ErrorKind::Config, "cannot write " + path_);
    out_ << "# landau " << LANDAU_VERSION << "\n# config: " << config.echo << "\n";
    for (const auto& line : extra_header) out_ << "# " << line << "\n";
    out_ << columns << "\n";
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << "\n";
  }

  const std::string& path() const { return path_; }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::string path_;
  std::ofstream out_;
};

template <class T>
void read(const Json& j, const char* key, T& dst) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    dst = it->template get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config key '") + key + "': " + e.what());
  }
}

template <class T>
void read(const Json& j, const char* key, std::optional<T>& dst) {
  T v{};
  if (j.contains(key)) {
    read(j, key, v);
    dst = v;
  }
}

void check_keys(const Json& j, const std::vector<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::Config, where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw Error(ErrorKind::Config, "unknown key '" + item.key() + "' in " + where);
    }
  }
}

// An inline field object is rewritten into the text format so both inputs
// share one parser.
FieldSpec parse_inline_field(const Json& j, const std::string& source) {
  check_keys(j, {"flux", "bc", "eps0", "eps1", "B", "A0", "A1"}, "field");
  std::ostringstream text;
  for (const char* key : {"flux", "bc", "eps0", "eps1"}) {
    if (!j.contains(key)) continue;
    double v = 0.0;
    read(j, key, v);
    text << key << " " << num(v) << "\n";
  }
  for (const char* section : {"B", "A0", "A1"}) {
    if (!j.contains(section)) continue;
    const Json& modes = j.at(section);
    if (!modes.is_array()) throw Error(ErrorKind::Config, std::string("field.") + section + " must be an array");
    text << "[" << section << "]\n";
    for (const auto& mode : modes) {
      if (!mode.is_array() || mode.size() != 4 || !mode[0].is_number_integer() || !mode[1].is_number_integer() ||
          !mode[2].is_number() || !mode[3].is_number()) {
        throw Error(ErrorKind::Config, std::string("field.") + section + " entries must be [j, k, re, im]");
      }
      text << mode[0].get<int>() << " " << mode[1].get<int>() << " " << num(mode[2].get<double>()) << " "
           << num(mode[3].get<double>()) << "\n";
    }
  }
  std::istringstream in(text.str());
  return parse_field(in, source);
}

Json modes_json(const Series2& s) {
  Json out = Json::array();
  for (const auto& [jk, c] : s.coeffs()) out.push_back({jk.first, jk.second, c.real(), c.imag()});
  return out;
}

Json modes_json(const Series1& s) {
  Json out = Json::array();
  for (const auto& [k, c] : s.coeffs()) out.push_back({0, k, c.real(), c.imag()});
  return out;
}

Json field_json(const FieldSpec& f) {
  Json j;
  j["kind"] = f.kind == FieldSpec::Kind::Field ? "B" : "potentials";
  if (f.b_c) j["bc"] = *f.b_c;
  if (f.kind == FieldSpec::Kind::Field) {
    j["B"] = modes_json(f.b);
  } else {
    j["eps0"] = f.eps0;
    j["eps1"] = f.eps1;
    j["A0"] = modes_json(f.a0);
    j["A1"] = modes_json(f.a1);
  }
  return j;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["field"] = field_json(c.field);
  j["eps0"] = c.eps0 ? Json(*c.eps0) : Json(nullptr);
  j["eps1"] = c.eps1 ? Json(*c.eps1) : Json(nullptr);
  j["subtract_x_average"] = c.subtract_x_average;
  j["m_max"] = c.m_max;
  j["n_window"] = c.n_window;
  j["quad_nodes"] = c.quad_nodes;
  j["p_grid"] = c.p_grid;
  j["xi_grid"] = c.xi_grid;
  j["m_protect"] = c.m_protect;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["tol_quad"] = c.tol_quad;
  j["truncation_tol"] = c.truncation_tol;
  j["tail_tol"] = c.tail_tol;
  j["norm_s"] = c.norm_s;
  j["norm_delta"] = c.norm_delta;
  j["method"] = c.method;
  j["workers"] = c.workers;
  j["out"] = c.out;
  j["eigfun"] = {{"m", c.eigfun.m},         {"k", c.eigfun.k},         {"xi", c.eigfun.xi},
                 {"n_dec", c.eigfun.n_dec}, {"y_max", c.eigfun.y_max}, {"nx", c.eigfun.nx},
                 {"ny", c.eigfun.ny}};
  j["diophantine"] = {
      {"C", c.diophantine.constant}, {"kappa", c.diophantine.kappa}, {"n_max", c.diophantine.n_max}};
  j["diag_xi"] = c.diag_xi;
  j["family_norms"] = c.family_norms;
  return j;
}

GaugeData resolve_gauge(const RunConfig& c) {
  GaugeOptions options;
  options.subtract_x_average = c.subtract_x_average;
  options.require_ordering = false;
  GaugeData g = to_gauge(c.field, options);
  if (c.eps0 || c.eps1) g = with_couplings(g, c.eps0.value_or(g.eps0), c.eps1.value_or(g.eps1));
  if (g.eps0 > 0.0 && g.eps1 > 0.0 && !(g.eps1 < g.eps0)) {
    throw Error(ErrorKind::Config, "expected eps1 < eps0 when both couplings are nonzero");
  }
  return g;
}

MatrixElementTable build_table(const RunConfig& c, const GaugeData& g) {
  TableOptions t;
  t.l_max = c.m_max;
  t.n_nodes = c.quad_nodes;
  t.tol_quad = c.tol_quad;
  return MatrixElementTable::build(g, t);
}

FiberOptions fiber_options(const RunConfig& c) {
  FiberOptions f;
  f.m_max = c.m_max;
  f.n_window = c.n_window;
  f.truncation_tol = c.truncation_tol;
  return f;
}

ReductionOptions reduction_options(const RunConfig& c) {
  ReductionOptions r;
  r.m_protect = c.m_protect;
  r.tol = c.tol;
  r.max_iter = c.max_iter;
  r.weights.s = c.norm_s;
  r.weights.delta = c.norm_delta;
  return r;
}

void prepare_out(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory " + c.out + ": " + ec.message());
}

// Field described by the input, before any coupling override.
Series2 input_field(const FieldSpec& f) {
  Series2 b = f.kind == FieldSpec::Kind::Field ? f.b : Series2{};
  if (f.b_c) b.add(0, 0, *f.b_c);
  if (f.kind == FieldSpec::Kind::Potentials) {
    b += f.a1.d_dx() * Complex(f.eps1);
    b += lift_y(f.a0.derivative()) * Complex(-f.eps0);
  }
  return b.pruned(0.0);
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::string& base_dir, const std::string& source) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, source + ": " + e.what());
  }
  check_keys(j,
             {"field_file", "field", "eps0", "eps1", "subtract_x_average", "m_max", "n_window", "quad_nodes",
              "p_grid", "xi_grid", "m_protect", "tol", "max_iter", "tol_quad", "truncation_tol", "tail_tol",
              "norm_s", "norm_delta", "method", "workers", "out", "eigfun", "diophantine", "diag_xi",
              "family_norms"},
             source);
  RunConfig c;
  if (j.contains("field_file") && j.contains("field")) {
    throw Error(ErrorKind::Config, "give either field_file or field, not both");
  }
  if (j.contains("field_file")) {
    std::string path;
    read(j, "field_file", path);
    if (fs::path(path).is_relative() && !base_dir.empty()) path = (fs::path(base_dir) / path).string();
    c.field = parse_field_file(path);
  } else if (j.contains("field")) {
    c.field = parse_inline_field(j.at("field"), source + ":field");
  } else {
    throw Error(ErrorKind::Config, "configuration needs field_file or field");
  }
  for (const char* key : {"eps0", "eps1"}) {
    if (j.contains(key) && j.at(key).is_null()) continue;
    read(j, key, key[3] == '0' ? c.eps0 : c.eps1);
  }
  read(j, "subtract_x_average", c.subtract_x_average);
  read(j, "m_max", c.m_max);
  read(j, "n_window", c.n_window);
  read(j, "quad_nodes", c.quad_nodes);
  read(j, "p_grid", c.p_grid);
  read(j, "xi_grid", c.xi_grid);
  read(j, "m_protect", c.m_protect);
  read(j, "tol", c.tol);
  read(j, "max_iter", c.max_iter);
  read(j, "tol_quad", c.tol_quad);
  read(j, "truncation_tol", c.truncation_tol);
  read(j, "tail_tol", c.tail_tol);
  read(j, "norm_s", c.norm_s);
  read(j, "norm_delta", c.norm_delta);
  read(j, "method", c.method);
  read(j, "workers", c.workers);
  read(j, "out", c.out);
  read(j, "diag_xi", c.diag_xi);
  read(j, "family_norms", c.family_norms);
  if (j.contains("eigfun")) {
    const Json& e = j.at("eigfun");
    check_keys(e, {"m", "k", "xi", "n_dec", "y_max", "nx", "ny"}, "eigfun");
    read(e, "m", c.eigfun.m);
    read(e, "k", c.eigfun.k);
    read(e, "xi", c.eigfun.xi);
    read(e, "n_dec", c.eigfun.n_dec);
    read(e, "y_max", c.eigfun.y_max);
    read(e, "nx", c.eigfun.nx);
    read(e, "ny", c.eigfun.ny);
  }
  if (j.contains("diophantine")) {
    const Json& d = j.at("diophantine");
    check_keys(d, {"C", "kappa", "n_max"}, "diophantine");
    read(d, "C", c.diophantine.constant);
    read(d, "kappa", c.diophantine.kappa);
    read(d, "n_max", c.diophantine.n_max);
  }
  finalize(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), fs::path(path).parent_path().string(), path);
}

void finalize(RunConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::Config, what);
  };
  require(c.tol > 0 && c.tol_quad > 0 && c.truncation_tol > 0 && c.tail_tol > 0, "tolerances must be positive");
  require(c.m_max >= 1, "m_max must be at least 1");
  require(c.n_window >= 1, "n_window must be at least 1");
  require(c.m_protect >= 0 && c.m_protect < c.m_max, "m_protect must lie in 0..m_max-1");
  require(c.quad_nodes >= 0, "quad_nodes must be non-negative");
  require(c.xi_grid >= 1 && c.p_grid >= 1, "grids need at least one point");
  require(c.max_iter >= 1, "max_iter must be at least 1");
  require(c.workers >= 1, "workers must be at least 1");
  require(c.method == "reduced" || c.method == "dense", "method must be 'reduced' or 'dense'");
  require(c.norm_s >= 0 && c.norm_delta >= 0, "norm weights must be non-negative");
  require(!c.eps0 || *c.eps0 >= 0, "eps0 must be non-negative");
  require(!c.eps1 || *c.eps1 >= 0, "eps1 must be non-negative");
  require(c.eigfun.nx >= 1 && c.eigfun.ny >= 3 && c.eigfun.y_max > 0 && c.eigfun.n_dec >= 0,
          "eigfun grid needs nx >= 1, ny >= 3, y_max > 0, n_dec >= 0");
  require(c.diophantine.n_max >= 1 && c.diophantine.constant > 0, "diophantine needs n_max >= 1 and C > 0");
  require(!c.out.empty(), "output directory must be set");
  c.echo = config_json(c).dump();
}

std::vector<std::string> cmd_decompose(const RunConfig& c, std::ostream& log) {
  GaugeOptions options;
  options.subtract_x_average = c.subtract_x_average;
  options.require_ordering = false;
  const GaugeData raw = to_gauge(c.field, options);
  const double residual = max_coeff_difference(raw.field(), input_field(c.field));
  const GaugeData g = resolve_gauge(c);
  prepare_out(c);

  Csv modes(c, "gauge.csv", {}, "potential,j,k,re,im");
  for (const auto& [k, v] : g.a0.coeffs()) modes.row("A0", 0, k, v.real(), v.imag());
  for (const auto& [jk, v] : g.a1.coeffs()) modes.row("A1", jk.first, jk.second, v.real(), v.imag());

  Csv summary(c, "gauge_summary.csv", {}, "quantity,value");
  summary.row("b_c", g.b_c);
  summary.row("flux", g.flux);
  summary.row("beta", g.beta);
  summary.row("eps0", g.eps0);
  summary.row("eps1", g.eps1);
  summary.row("curl_residual", residual);

  log << "b_c = " << num(g.b_c) << ", flux = " << num(g.flux) << ", beta = " << num(g.beta) << "\n";
  log << "eps0 = " << num(g.eps0) << ", eps1 = " << num(g.eps1) << ", curl residual = " << num(residual) << "\n";
  return {modes.path(), summary.path()};
}

std::vector<std::string> cmd_spectrum(const RunConfig& c, std::ostream& log) {
  const GaugeData g = resolve_gauge(c);
  const MatrixElementTable table = build_table(c, g);
  SweepOptions options;
  options.xi_grid = c.xi_grid;
  options.method = c.method == "dense" ? SweepMethod::Dense : SweepMethod::Reduced;
  options.fiber = fiber_options(c);
  options.reduction = reduction_options(c);
  options.workers = c.workers;
  const SpectrumSweep s = sweep(g, table, options);
  prepare_out(c);

  std::vector<std::string> written;
  {
    Csv ev(c, "eigenvalues.csv", {}, "xi,level,band_index,eigenvalue");
    for (std::size_t i = 0; i < s.xi.size(); ++i) {
      for (const auto& level : s.levels) {
        const auto& values = level.curves[i];
        for (std::size_t b = 0; b < values.size(); ++b) ev.row(s.xi[i], level.m, static_cast<int>(b), values[b]);
      }
    }
    written.push_back(ev.path());
  }
  {
    Csv bands(c, "bands.csv", {}, "level,band_lo,band_hi");
    for (const auto& level : s.levels) {
      for (const auto& iv : level.bands) bands.row(level.m, iv.lo, iv.hi);
    }
    written.push_back(bands.path());
  }
  {
    Csv summary(c, "spectrum_summary.csv", {}, "level,measure,band_crossing,lambda_conflict,lambda_conflict_size");
    for (const auto& level : s.levels) {
      summary.row(level.m, level.measure, level.band_crossing, level.lambda_conflict, level.lambda_conflict_size);
    }
    written.push_back(summary.path());
  }
  for (const auto& level : s.levels) {
    log << "level " << level.m << ": measure " << num(level.measure) << " in " << level.bands.size()
        << " interval(s)" << (level.band_crossing ? ", possible band crossing" : "") << "\n";
    if (level.lambda_conflict) {
      log << "warning: lambda_" << level.m << " samples disagree by " << num(level.lambda_conflict_size)
          << " at equal p; lambda_m" << level.m << ".csv not written\n";
      continue;
    }
    Csv lambda(c, "lambda_m" + std::to_string(level.m) + ".csv", {}, "p,lambda");
    for (const auto& [p, v] : level.lambda) lambda.row(p, v);
    written.push_back(lambda.path());
  }
  log << "largest reduction iteration count: " << s.max_iterations << "\n";
  return written;
}

std::vector<std::string> cmd_eigfun(const RunConfig& c, std::ostream& log) {
  const GaugeData g = resolve_gauge(c);
  const MatrixElementTable table = build_table(c, g);
  const EigfunConfig& e = c.eigfun;
  if (e.m < 0 || e.m > c.m_protect) {
    throw Error(ErrorKind::Config, "level m = " + std::to_string(e.m) + " is outside the protected window 0.." +
                                       std::to_string(c.m_protect));
  }
  if (std::abs(e.k) > c.n_window) throw Error(ErrorKind::Config, "site k lies outside the momentum window");
  const FiberOperator op = assemble(e.xi, g, table, fiber_options(c));
  const ReductionState state = reduce(op, reduction_options(c));
  EigenfunctionOptions options;
  options.tail_tol = c.tail_tol;
  const EigenfunctionField f = reconstruct(op, state, e.m, e.k, options);
  const DecayReport d = decay_report(f, e.n_dec, e.y_max, e.nx, e.ny);
  prepare_out(c);

  const std::string stem = "eigfun_m" + std::to_string(e.m) + "_k" + std::to_string(e.k);
  std::vector<std::string> written;
  {
    Csv grid(c, stem + ".csv",
             {"m=" + std::to_string(e.m) + " k=" + std::to_string(e.k) + " xi=" + num(e.xi) +
              " lambda=" + num(f.lambda)},
             "x,y,re,im");
    const Eigen::MatrixXcd values = f.grid(e.nx, e.ny, e.y_max);
    for (int j = 0; j < e.ny; ++j) {
      const double y = -e.y_max + 2.0 * e.y_max * j / (e.ny - 1);
      for (int i = 0; i < e.nx; ++i) grid.row(double(i) / e.nx, y, values(j, i).real(), values(j, i).imag());
    }
    written.push_back(grid.path());
  }
  {
    Csv report(c, stem + "_decay.csv", {}, "quantity,value");
    report.row("lambda", f.lambda);
    report.row("residual", f.residual);
    report.row("tail", f.tail);
    report.row("n_dec", d.n_dec);
    report.row("y_max", d.y_max);
    report.row("sup_weighted", d.sup_weighted);
    report.row("argmax_y", d.argmax_y);
    report.row("edge_value", d.edge_value);
    report.row("slope", d.slope);
    report.row("bounded", d.bounded);
    report.row("edge_growth", d.edge_growth);
    written.push_back(report.path());
  }
  log << "lambda = " << num(f.lambda) << ", residual = " << num(f.residual) << ", tail = " << num(f.tail) << "\n";
  log << "decay (n_dec = " << d.n_dec << "): " << (d.bounded ? "bounded" : "not bounded")
      << ", log-log slope " << num(d.slope) << (d.edge_growth ? ", grows at the edge" : "") << "\n";
  return written;
}

std::vector<std::string> cmd_diagnostics(const RunConfig& c, std::ostream& log) {
  const GaugeData g = resolve_gauge(c);
  const MatrixElementTable table = build_table(c, g);
  const FiberOperator op = assemble(c.diag_xi, g, table, fiber_options(c));
  const ReductionState state = reduce(op, reduction_options(c));
  const DiophantineReport dio =
      check_diophantine(g.beta, c.diophantine.constant, c.diophantine.kappa, c.diophantine.n_max);
  prepare_out(c);

  std::vector<std::string> written;
  {
    Csv rlog(c, "reduction_log.csv", {"xi=" + num(c.diag_xi)}, "j,gamma,delta,w_norm,denominator_margin");
    for (const auto& r : state.history) rlog.row(r.j, r.gamma, r.delta, r.w_norm, r.denominator_margin);
    written.push_back(rlog.path());
  }
  {
    Csv d(c, "diophantine.csv", {}, "beta,kappa,C,min_value,argmin,violated");
    d.row(dio.beta, dio.kappa, dio.constant, dio.min_value, static_cast<long long>(dio.argmin), dio.violated);
    written.push_back(d.path());
    Csv conv(c, "convergents.csv", {}, "p,q");
    for (const auto& [p, q] : dio.convergents) conv.row(static_cast<long long>(p), static_cast<long long>(q));
    written.push_back(conv.path());
  }
  {
    Csv morse(c, "morse.csv", {}, "level,critical_points,passed");
    for (int m = 0; m <= c.m_protect; ++m) {
      const MorseReport r = morse_check(table, m, c.p_grid);
      morse.row(r.m, r.critical_points, r.passed);
      log << "Morse check, level " << m << ": " << r.critical_points << " critical points, "
          << (r.passed ? "passed" : "failed") << "\n";
    }
    written.push_back(morse.path());
  }
  if (c.family_norms) {
    const auto family = reduce_family(g, table, fiber_options(c), reduction_options(c), c.p_grid, c.workers);
    const FamilyNorms n = family_norms(family, reduction_options(c).weights);
    Csv fn(c, "family_norms.csv", {"p_grid=" + std::to_string(c.p_grid)}, "gamma,diagonal_drift");
    fn.row(n.gamma, n.diagonal_drift);
    written.push_back(fn.path());
  }
  log << "reduction at xi = " << num(c.diag_xi) << ": " << state.history.size() << " record(s), "
      << (state.converged ? "converged" : "not converged") << "\n";
  log << "diophantine (C = " << num(dio.constant) << ", kappa = " << num(dio.kappa) << "): min "
      << num(dio.min_value) << " at n = " << dio.argmin << (dio.violated ? ", violated" : ", satisfied") << "\n";
  return written;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of magnetic Schroedinger operators with periodic field"};
  app.set_version_flag("--version", std::string(LANDAU_VERSION));
  app.require_subcommand(1);

  struct Flags {
    std::string config, field, out;
    std::optional<int> workers, mmax, nwindow, xigrid, seedlevel, m, k;
    std::optional<double> eps0, eps1, xi;
  } flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON configuration file");
    sub->add_option("--field", flags.field, "field file (overrides the configuration)");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--workers", flags.workers, "worker threads");
    sub->add_option("--eps0", flags.eps0, "coupling of A0");
    sub->add_option("--eps1", flags.eps1, "coupling of A1");
    sub->add_option("--mmax", flags.mmax, "highest Landau level kept");
    sub->add_option("--nwindow", flags.nwindow, "momentum window N");
    sub->add_option("--xigrid", flags.xigrid, "number of xi samples");
    sub->add_option("--seedlevel", flags.seedlevel, "protected levels 0..M");
  };
  CLI::App* decompose = app.add_subcommand("decompose", "split the field into constant part and potentials");
  CLI::App* spectrum = app.add_subcommand("spectrum", "sweep xi and write bands and lambda_m samples");
  CLI::App* eigfun = app.add_subcommand("eigfun", "reconstruct one generalised eigenfunction");
  CLI::App* diagnostics = app.add_subcommand("diagnostics", "reduction log, diophantine and Morse checks");
  for (CLI::App* sub : {decompose, spectrum, eigfun, diagnostics}) add_common(sub);
  eigfun->add_option("--m", flags.m, "protected level");
  eigfun->add_option("--k", flags.k, "site");
  eigfun->add_option("--xi", flags.xi, "quasi-momentum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig c;
    if (!flags.config.empty()) {
      c = load_config(flags.config);
    } else if (flags.field.empty()) {
      throw Error(ErrorKind::Config, "give --config or --field");
    }
    if (!flags.field.empty()) c.field = parse_field_file(flags.field);
    if (!flags.out.empty()) c.out = flags.out;
    if (flags.workers) c.workers = *flags.workers;
    if (flags.eps0) c.eps0 = flags.eps0;
    if (flags.eps1) c.eps1 = flags.eps1;
    if (flags.mmax) c.m_max = *flags.mmax;
    if (flags.nwindow) c.n_window = *flags.nwindow;
    if (flags.xigrid) c.xi_grid = *flags.xigrid;
    if (flags.seedlevel) c.m_protect = *flags.seedlevel;
    if (flags.m) c.eigfun.m = *flags.m;
    if (flags.k) c.eigfun.k = *flags.k;
    if (flags.xi) c.eigfun.xi = *flags.xi;
    finalize(c);

    std::vector<std::string> written;
    if (decompose->parsed()) written = cmd_decompose(c, out);
    if (spectrum->parsed()) written = cmd_spectrum(c, out);
    if (eigfun->parsed()) written = cmd_eigfun(c, out);
    if (diagnostics->parsed()) written = cmd_diagnostics(c, out);
    for (const auto& path : written) out << "wrote " << path << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_input_error() || e.kind() == ErrorKind::ZeroFlux ? 2 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace landau::cli
