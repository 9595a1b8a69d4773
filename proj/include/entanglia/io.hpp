#pragma once

#include <string>
#include <vector>

#include "entanglia/channels.hpp"
#include "entanglia/states.hpp"
#include "entanglia/tensor.hpp"

namespace entanglia::io {

/// Raised for malformed files and option strings; the CLI maps it to a usage error.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"dims": [...], "matrix": [[[re, im], ...], ...]} or {"dims": [...], "vector": [[re, im], ...]}.
/// Vectors are read as their projector.
std::string state_to_json(const DensityMatrix& rho);
std::string state_to_json(const StateVector& psi);
DensityMatrix state_from_json(const std::string& text);

/// {"input_dims": [...], "policy": "strict_cptp", "name": "...",
///  "terms": [{"weight": w, "op": [[[re, im], ...], ...]}, ...]}
std::string channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Twelve significant digits, the CSV float format.
std::string format_double(double v);

/// "start:end:step" or a single number. The grid always contains both ends; the number of
/// intervals is (end - start) / step rounded to the nearest integer, so a step that does not
/// divide the span is adjusted by less than half a step per point.
std::vector<double> parse_range(const std::string& spec);

/// "0|12" or "0,1|2": party digits or comma lists on both sides of '|'.
Bipartition parse_cut(const std::string& spec, std::size_t parties);

}  // namespace entanglia::io
