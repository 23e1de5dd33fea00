#include "landau/field_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "landau/error.hpp"

namespace landau {

namespace {

enum class Section { None, B, A0, A1 };

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(ErrorKind::Parse, msg.str());
}

double parse_number(const std::string& token, const std::string& source, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    fail(source, line, "expected a number, got '" + token + "'");
  }
  if (used != token.size() || !std::isfinite(v)) fail(source, line, "expected a number, got '" + token + "'");
  return v;
}

int parse_int(const std::string& token, const std::string& source, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    fail(source, line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size() || v < -100000 || v > 100000) {
    fail(source, line, "expected a small integer, got '" + token + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

FieldSpec parse_field(std::istream& in, const std::string& source) {
  FieldSpec spec;
  Section section = Section::None;
  bool saw_b = false, saw_potential = false, saw_eps = false;
  int eps_line = 0;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;

    const std::string& head = words.front();
    if (head.front() == '[') {
      if (words.size() != 1) fail(source, line, "unexpected text after section header");
      if (head == "[B]") {
        section = Section::B;
        saw_b = true;
      } else if (head == "[A0]") {
        section = Section::A0;
        saw_potential = true;
      } else if (head == "[A1]") {
        section = Section::A1;
        saw_potential = true;
      } else {
        fail(source, line, "unknown section " + head);
      }
      continue;
    }
    if (head == "flux" || head == "bc" || head == "eps0" || head == "eps1") {
      if (words.size() != 2) fail(source, line, head + " takes exactly one value");
      const double v = parse_number(words[1], source, line);
      if (head == "flux") {
        spec.b_c = 2.0 * std::numbers::pi * v;
      } else if (head == "bc") {
        spec.b_c = v;
      } else {
        if (v < 0.0) fail(source, line, head + " must be non-negative");
        (head == "eps0" ? spec.eps0 : spec.eps1) = v;
        saw_eps = true;
        eps_line = line;
      }
      continue;
    }
    if (section == Section::None) fail(source, line, "mode line outside a section");
    if (words.size() != 4) fail(source, line, "mode lines need four fields: j k re im");
    const int j = parse_int(words[0], source, line);
    const int k = parse_int(words[1], source, line);
    const Complex c(parse_number(words[2], source, line), parse_number(words[3], source, line));
    switch (section) {
      case Section::B: spec.b.add(j, k, c); break;
      case Section::A0:
        if (j != 0) fail(source, line, "A0 depends on y only; its modes need j = 0");
        spec.a0.add(k, c);
        break;
      case Section::A1: spec.a1.add(j, k, c); break;
      case Section::None: break;
    }
  }
  if (saw_b && saw_potential) fail(source, line, "give either [B] or [A0]/[A1], not both");
  if (saw_b && saw_eps) fail(source, eps_line, "eps0/eps1 lines only apply to potential input");
  if (!saw_b && !saw_potential && !spec.b_c) fail(source, line, "no field given");
  spec.kind = saw_potential ? FieldSpec::Kind::Potentials : FieldSpec::Kind::Field;
  if (spec.kind == FieldSpec::Kind::Potentials && !spec.b_c) {
    fail(source, line, "potential input needs a flux or bc line");
  }
  return spec;
}

FieldSpec parse_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open field file " + path);
  return parse_field(in, path);
}

GaugeData to_gauge(const FieldSpec& spec, const GaugeOptions& options) {
  if (spec.kind == FieldSpec::Kind::Potentials) {
    return make_gauge(*spec.b_c, spec.a0, spec.a1, spec.eps0, spec.eps1, options);
  }
  PeriodicField field{spec.b};
  if (spec.b_c) field.coeffs.add(0, 0, *spec.b_c);
  return decompose(field, options);
}

}  // namespace landau
