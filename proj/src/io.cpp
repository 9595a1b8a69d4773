#include "entanglia/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace entanglia::io {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw FormatError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Dims dims_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw FormatError(std::string("missing array field '") + key + "'");
  }
  Dims dims;
  for (const auto& v : j[key]) {
    if (!v.is_number_unsigned()) throw FormatError("dims must be positive integers");
    dims.push_back(v.get<std::size_t>());
  }
  return dims;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string state_to_json(const DensityMatrix& rho) {
  json j;
  j["dims"] = rho.dims();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j.dump(1);
}

std::string state_to_json(const StateVector& psi) {
  json j;
  j["dims"] = psi.dims();
  json amps = json::array();
  for (auto z : psi.amplitudes()) amps.push_back(complex_to_json(z));
  j["vector"] = std::move(amps);
  return j.dump(1);
}

DensityMatrix state_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("state file must hold a JSON object");
  Dims dims = dims_from_json(j, "dims");
  if (j.contains("matrix")) return DensityMatrix(matrix_from_json(j["matrix"]), std::move(dims));
  if (j.contains("vector")) {
    if (!j["vector"].is_array()) throw FormatError("'vector' must be an array");
    std::vector<Complex> amps;
    for (const auto& z : j["vector"]) amps.push_back(complex_from_json(z));
    return StateVector(std::move(amps), std::move(dims)).projector();
  }
  throw FormatError("state file needs a 'matrix' or 'vector' field");
}

std::string channel_to_json(const KrausChannel& ch) {
  json j;
  j["input_dims"] = ch.input_dims();
  j["policy"] = to_string(ch.policy());
  j["name"] = ch.name();
  json terms = json::array();
  for (const auto& t : ch.terms()) {
    terms.push_back({{"weight", t.weight}, {"op", matrix_to_json(t.op)}});
  }
  j["terms"] = std::move(terms);
  return j.dump(1);
}

KrausChannel channel_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("channel file must hold a JSON object");
  Dims dims = dims_from_json(j, "input_dims");
  const auto policy = policy_from_string(j.value("policy", std::string("strict_cptp")));
  if (!j.contains("terms") || !j["terms"].is_array()) throw FormatError("missing 'terms' array");
  std::vector<KrausTerm> terms;
  for (const auto& t : j["terms"]) {
    if (!t.contains("op")) throw FormatError("every term needs an 'op'");
    const double w = t.value("weight", 1.0);
    terms.push_back({w, matrix_from_json(t["op"])});
  }
  return KrausChannel(std::move(terms), std::move(dims), policy,
                      j.value("name", std::string("file")));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError("bad number '" + s + "' in '" + whole + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw FormatError("bad number '" + s + "' in '" + whole + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 1) return {parse_number(parts[0], spec)};
  if (parts.size() != 3) throw FormatError("range must be start:end:step, got '" + spec + "'");
  const double start = parse_number(parts[0], spec);
  const double end = parse_number(parts[1], spec);
  const double step = parse_number(parts[2], spec);
  if (end < start) throw FormatError("range end precedes start in '" + spec + "'");
  if (end == start) return {start};
  if (!(step > 0.0)) throw FormatError("range step must be positive in '" + spec + "'");
  const double count = std::floor((end - start) / step + 0.5) + 1.0;
  if (count > 1e7) throw FormatError("range '" + spec + "' has too many points");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const auto n = static_cast<std::size_t>(count);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(start + (end - start) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

Bipartition parse_cut(const std::string& spec, std::size_t parties) {
  const auto bar = spec.find('|');
  if (bar == std::string::npos || spec.find('|', bar + 1) != std::string::npos) {
    throw FormatError("cut must look like '0|12', got '" + spec + "'");
  }
  auto side = [&](const std::string& s) {
    std::vector<std::size_t> out;
    const bool commas = s.find(',') != std::string::npos;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, commas ? ',' : '\0');) {
      if (commas) {
        const double v = parse_number(item, spec);
        if (v < 0.0 || v != std::floor(v)) throw FormatError("bad party index in cut '" + spec + "'");
        out.push_back(static_cast<std::size_t>(v));
        continue;
      }
      for (char c : item) {
        if (c < '0' || c > '9') throw FormatError("bad party index in cut '" + spec + "'");
        out.push_back(static_cast<std::size_t>(c - '0'));
      }
    }
    return out;
  };
  try {
    Bipartition cut(side(spec.substr(0, bar)), side(spec.substr(bar + 1)));
    if (cut.parties() != parties) throw FormatError("cut '" + spec + "' does not cover the state");
    return cut;
  } catch (const std::invalid_argument& e) {
    throw FormatError("cut '" + spec + "': " + e.what());
  }
}

}  // namespace entanglia::io
