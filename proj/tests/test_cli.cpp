#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "landau/cli.hpp"
#include "landau/error.hpp"

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "landau");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = landau::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Rows of a CSV without the '#' header lines and the column line.
std::vector<std::vector<std::string>> rows(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  bool columns = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!columns) {
      columns = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream s(line);
    for (std::string c; std::getline(s, c, ',');) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

// Exit status of the installed binary, run through the shell.
int binary_exit(const std::string& args) {
  const char* cli = std::getenv("LANDAU_CLI");
  REQUIRE(cli != nullptr);
  const std::string command = std::string(cli) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kCosineField =
    "flux 1\n"
    "[B]\n"
    "0 1 0.05 0\n"
    "0 -1 0.05 0\n";

const char* kPotentials =
    "flux 1\n"
    "eps0 0.01\n"
    "eps1 0.005\n"
    "[A0]\n"
    "0 1 0.5 0\n"
    "0 -1 0.5 0\n"
    "[A1]\n"
    "1 1 0.25 0\n"
    "-1 -1 0.25 0\n"
    "1 -1 0.25 0\n"
    "-1 1 0.25 0\n";

}  // namespace

TEST_CASE("decompose a constant field") {
  const fs::path dir = scratch("constant");
  write(dir / "b.field", "flux 1\n");
  const Result r = run({"decompose", "--field", (dir / "b.field").string(), "--out", (dir / "out").string()});
  REQUIRE(r.code == 0);
  const auto summary = rows(dir / "out" / "gauge_summary.csv");
  REQUIRE(summary.size() == 6u);
  CHECK(summary[0][0] == "b_c");
  CHECK(std::stod(summary[0][1]) == doctest::Approx(2.0 * kPi));
  CHECK(summary[1][0] == "flux");
  CHECK(std::stod(summary[1][1]) == doctest::Approx(1.0));
  CHECK(std::stod(summary[3][1]) == 0.0);
  CHECK(std::stod(summary[4][1]) == 0.0);
  CHECK(rows(dir / "out" / "gauge.csv").empty());
}

TEST_CASE("decompose a cosine field") {
  const fs::path dir = scratch("cosine");
  write(dir / "b.field", kCosineField);
  const Result r = run({"decompose", "--field", (dir / "b.field").string(), "--out", (dir / "out").string()});
  REQUIRE(r.code == 0);
  const std::string text = slurp(dir / "out" / "gauge.csv");
  CHECK(text.rfind("# landau ", 0) == 0);
  CHECK(text.find("\n# config: {\"field\":") != std::string::npos);
  const auto modes = rows(dir / "out" / "gauge.csv");
  // B = 2 pi + 0.1 cos(2 pi y): eps0 A0 = -0.1 sin(2 pi y) / (2 pi), A0 = -sin.
  REQUIRE(modes.size() == 2u);
  for (const auto& m : modes) {
    CHECK(m[0] == "A0");
    CHECK(std::stod(m[3]) == 0.0);
    CHECK(std::abs(std::stod(m[4])) == doctest::Approx(0.5));
  }
  const auto summary = rows(dir / "out" / "gauge_summary.csv");
  CHECK(std::stod(summary[3][1]) == doctest::Approx(0.1 / (2.0 * kPi)));
  CHECK(std::stod(summary[5][1]) <= 1e-15);
  // 17 significant digits.
  CHECK(summary[0][1] == "6.2831853071795862");
}

TEST_CASE("malformed field file reports the line") {
  const fs::path dir = scratch("malformed");
  write(dir / "b.field", "flux 1\n[B]\n0 1 oops 0\n");
  const Result r = run({"decompose", "--field", (dir / "b.field").string(), "--out", (dir / "out").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("b.field:3:") != std::string::npos);
}

TEST_CASE("zero coupling spectrum has flat bands") {
  const fs::path dir = scratch("flat");
  write(dir / "b.field", "flux 1\n");
  const Result r = run({"spectrum", "--field", (dir / "b.field").string(), "--out", (dir / "out").string(),
                        "--mmax", "4", "--nwindow", "2", "--xigrid", "4", "--seedlevel", "1"});
  REQUIRE(r.code == 0);
  const auto bands = rows(dir / "out" / "bands.csv");
  REQUIRE(bands.size() == 2u);
  for (int m = 0; m <= 1; ++m) {
    CHECK(std::stoi(bands[m][0]) == m);
    CHECK(std::stod(bands[m][1]) == doctest::Approx(2.0 * kPi * (0.5 + m)));
    CHECK(std::stod(bands[m][2]) == std::stod(bands[m][1]));
  }
  CHECK(rows(dir / "out" / "eigenvalues.csv").size() == 4u * 2u * 5u);
  for (const auto& s : rows(dir / "out" / "spectrum_summary.csv")) CHECK(std::stod(s[1]) == 0.0);
}

TEST_CASE("spectrum outputs are byte-identical across reruns and worker counts") {
  const fs::path dir = scratch("determinism");
  write(dir / "p.field", kPotentials);
  const std::vector<std::string> common{"spectrum", "--field", (dir / "p.field").string(), "--mmax", "6",
                                        "--nwindow", "3", "--xigrid", "6", "--seedlevel", "1"};
  auto with = [&](const std::string& out, const std::string& workers) {
    auto args = common;
    for (const auto& a : {std::string("--out"), (dir / out).string(), std::string("--workers"), workers}) {
      args.push_back(a);
    }
    return args;
  };
  const std::vector<std::string> names{"eigenvalues.csv", "bands.csv", "spectrum_summary.csv"};
  REQUIRE(run(with("a", "1")).code == 0);
  std::vector<std::string> first;
  for (const auto& name : names) first.push_back(slurp(dir / "a" / name));
  REQUIRE(run(with("a", "1")).code == 0);
  REQUIRE(run(with("c", "3")).code == 0);
  // The config echo records the output directory and worker count; compare
  // the data below it across worker counts.
  const auto strip = [](const std::string& s) { return s.substr(s.find('\n', s.find("# config:")) + 1); };
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK_FALSE(first[i].empty());
    CHECK(first[i] == slurp(dir / "a" / names[i]));
    CHECK(strip(first[i]) == strip(slurp(dir / "c" / names[i])));
  }
}

TEST_CASE("eigenfunction at zero coupling is a Gaussian") {
  const fs::path dir = scratch("eigfun");
  write(dir / "b.field", "flux 1\n");
  const Result r = run({"eigfun", "--field", (dir / "b.field").string(), "--out", (dir / "out").string(),
                        "--mmax", "4", "--nwindow", "2", "--seedlevel", "1", "--m", "0", "--k", "0", "--xi",
                        "0"});
  REQUIRE(r.code == 0);
  const auto grid = rows(dir / "out" / "eigfun_m0_k0.csv");
  REQUIRE(grid.size() == 256u * 512u);
  // |Phi| = 2^(1/4) exp(-pi y^2) at xi = 0, site 0.
  for (std::size_t i = 0; i < grid.size(); i += 997) {
    const double y = std::stod(grid[i][1]);
    const double mag = std::hypot(std::stod(grid[i][2]), std::stod(grid[i][3]));
    CHECK(std::abs(mag - std::pow(2.0, 0.25) * std::exp(-kPi * y * y)) <= 1e-13);
  }
  const auto decay = rows(dir / "out" / "eigfun_m0_k0_decay.csv");
  CHECK(decay[0][0] == "lambda");
  CHECK(std::stod(decay[0][1]) == doctest::Approx(kPi));
  CHECK(std::stod(decay[1][1]) <= 1e-8);
  CHECK(decay[9][0] == "bounded");
  CHECK(decay[9][1] == "1");
}

TEST_CASE("eigenfunction outside the protected window is a configuration error") {
  const fs::path dir = scratch("eigfun_bad");
  write(dir / "b.field", "flux 1\n");
  const Result r = run({"eigfun", "--field", (dir / "b.field").string(), "--out", (dir / "out").string(),
                        "--mmax", "4", "--nwindow", "2", "--seedlevel", "1", "--m", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("outside the protected window") != std::string::npos);
}

TEST_CASE("diagnostics at rational flux") {
  const fs::path dir = scratch("diagnostics");
  write(dir / "p.field", kPotentials);
  write(dir / "run.json",
        "{\"field_file\": \"p.field\", \"m_max\": 6, \"n_window\": 3, \"m_protect\": 2, \"p_grid\": 64,"
        " \"diag_xi\": 0.3, \"family_norms\": true, \"out\": \"" +
            (dir / "out").string() + "\"}");
  const Result r = run({"diagnostics", "--config", (dir / "run.json").string()});
  REQUIRE(r.code == 0);
  const auto dio = rows(dir / "out" / "diophantine.csv");
  REQUIRE(dio.size() == 1u);
  CHECK(std::stod(dio[0][0]) == doctest::Approx(1.0));
  CHECK(dio[0][5] == "1");
  const auto morse = rows(dir / "out" / "morse.csv");
  REQUIRE(morse.size() == 3u);
  for (const auto& m : morse) {
    CHECK(m[1] == "2");
    CHECK(m[2] == "1");
  }
  const auto log = rows(dir / "out" / "reduction_log.csv");
  REQUIRE(log.size() >= 2u);
  for (std::size_t j = 0; j < log.size(); ++j) CHECK(std::stoi(log[j][0]) == static_cast<int>(j + 1));
  CHECK(std::stod(log.back()[1]) <= 1e-12);
  CHECK(fs::exists(dir / "out" / "family_norms.csv"));
}

TEST_CASE("configuration errors") {
  const fs::path dir = scratch("config");
  write(dir / "p.field", kPotentials);
  auto code_for = [&](const std::string& json) {
    write(dir / "run.json", json);
    return run({"decompose", "--config", (dir / "run.json").string(), "--out", (dir / "out").string()}).code;
  };
  CHECK(code_for("{\"field_file\": \"p.field\", \"bogus\": 1}") == 2);
  CHECK(code_for("{\"field_file\": \"p.field\", \"tol\": -1}") == 2);
  CHECK(code_for("{\"field_file\": \"p.field\", \"eps0\": 0.001, \"eps1\": 0.01}") == 2);
  CHECK(code_for("{\"field_file\": \"p.field\", \"m_max\": \"many\"}") == 2);
  CHECK(code_for("{\"field_file\": \"p.field\"") == 2);
  CHECK(code_for("{\"field\": {\"flux\": 1, \"B\": [[0, 1, 0.05, 0], [0, -1, 0.05, 0]]}}") == 0);
  CHECK(code_for("{\"field\": {\"flux\": 1, \"B\": [[0, 1, 0.05]]}}") == 2);
  CHECK(run({"decompose"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("inline field matches the file form") {
  const fs::path dir = scratch("inline");
  write(dir / "b.field", kCosineField);
  write(dir / "run.json", "{\"field\": {\"flux\": 1, \"B\": [[0, 1, 0.05, 0], [0, -1, 0.05, 0]]}}");
  REQUIRE(run({"decompose", "--field", (dir / "b.field").string(), "--out", (dir / "a").string()}).code == 0);
  REQUIRE(run({"decompose", "--config", (dir / "run.json").string(), "--out", (dir / "b").string()}).code == 0);
  CHECK(rows(dir / "a" / "gauge.csv") == rows(dir / "b" / "gauge.csv"));
  CHECK(rows(dir / "a" / "gauge_summary.csv") == rows(dir / "b" / "gauge_summary.csv"));
}

TEST_CASE("binary exit codes") {
  const fs::path dir = scratch("binary");
  write(dir / "b.field", "flux 1\n");
  write(dir / "zero.field", "flux 0\n[B]\n0 1 0.1 0\n0 -1 0.1 0\n");
  write(dir / "p.field", kPotentials);
  const std::string out = " --out " + (dir / "out").string();
  CHECK(binary_exit("--version") == 0);
  CHECK(binary_exit("decompose --field " + (dir / "b.field").string() + out) == 0);
  CHECK(binary_exit("decompose --field " + (dir / "zero.field").string() + out) == 2);
  CHECK(binary_exit("decompose --field " + (dir / "missing.field").string() + out) == 2);
  CHECK(binary_exit("nonsense") == 2);
  // Flux 1 with x-coupling: the eigenfunction spreads over the whole window.
  CHECK(binary_exit("eigfun --field " + (dir / "p.field").string() + out +
                    " --mmax 6 --nwindow 3 --seedlevel 1 --m 0 --k 0 --xi 0.2") == 3);
}
