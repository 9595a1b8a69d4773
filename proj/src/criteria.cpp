#include "entanglia/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "entanglia/states.hpp"

namespace entanglia {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::entangled: return "entangled";
    case Verdict::undecided: return "undecided";
    case Verdict::threshold: return "threshold";
  }
  return "undecided";
}

Verdict classify(double value, Polarity polarity, double tol) {
  if (std::abs(value) <= tol) return Verdict::threshold;
  const bool detects = polarity == Polarity::negative_detects ? value < 0.0 : value > 0.0;
  return detects ? Verdict::entangled : Verdict::undecided;
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const Bipartition& cut) {
  return min_eigenvalue(partial_transpose(rho, cut));
}

ComplexMatrix compress_repeated_digits(const DensityMatrix& rho, std::span<const std::size_t> a,
                                       std::span<const std::size_t> b) {
  const Bipartition cut(std::vector<std::size_t>(a.begin(), a.end()),
                        std::vector<std::size_t>(b.begin(), b.end()));
  const auto& dims = rho.dims();
  if (cut.parties() != dims.size()) {
    throw std::invalid_argument("compress_repeated_digits: groups do not cover all parties");
  }
  std::vector<std::size_t> stride(dims.size());
  std::size_t acc = 1;
  for (std::size_t s = dims.size(); s-- > 0;) {
    stride[s] = acc;
    acc *= dims[s];
  }
  auto index = [&](std::size_t va, std::size_t vb) {
    std::size_t idx = 0;
    for (auto s : cut.left()) idx += va * stride[s];
    for (auto s : cut.right()) idx += vb * stride[s];
    return idx;
  };
  // Groups are passed in caller order (A first) even though Bipartition sorts them.
  const std::size_t basis[4] = {index(0, 0), index(0, 1), index(1, 0), index(1, 1)};
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = rho.matrix()(basis[r], basis[c]);
  }
  return out;
}

namespace {

double two_qubit_ppt_min(const ComplexMatrix& block) {
  const std::vector<std::size_t> dims{2, 2};
  return min_eigenvalue(partial_transpose(block, dims, Bipartition({0}, {1})));
}

}  // namespace

double projection_witness(const DensityMatrix& rho, std::size_t k) {
  const std::size_t n = rho.parties();
  if (k < 1 || k > n / 2) throw std::invalid_argument("projection_witness: k out of range");
  std::vector<std::size_t> a, b;
  for (std::size_t s = 0; s < n; ++s) (s < k ? a : b).push_back(s);
  return two_qubit_ppt_min(compress_repeated_digits(rho, a, b));
}

double realignment_excess(const DensityMatrix& rho, const Bipartition& cut) {
  return trace_norm(realign(rho, cut)) - 1.0;
}

ThresholdSet thresholds(std::size_t d, std::size_t n) {
  if (d < 2 || n < 2) throw std::invalid_argument("thresholds: need d >= 2 and n >= 2");
  const double dn1 = std::pow(static_cast<double>(d), static_cast<double>(n - 1));
  return {3.0 / (dn1 + 3.0), 1.0 / (1.0 + dn1), 1.0 / (static_cast<double>(n) + 1.0), 0.5};
}

ComplexMatrix lambda_alpha_map(const ComplexMatrix& x, double alpha) {
  if (x.rows() != 3 || x.cols() != 3) throw std::invalid_argument("lambda_alpha_map: need 3x3 input");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("lambda_alpha_map: alpha outside (0,1]");
  }
  const double a = alpha, ia = 1.0 / alpha;
  ComplexMatrix y(3, 3);
  y(0, 0) = a * (x(0, 0) + x(1, 1));
  y(0, 1) = -x(0, 1);
  y(0, 2) = -a * x(0, 2);
  y(1, 0) = -x(1, 0);
  y(1, 1) = ia * (x(1, 1) + x(2, 2));
  y(1, 2) = -x(2, 1);
  y(2, 0) = -a * x(2, 0);
  y(2, 1) = -x(1, 2);
  y(2, 2) = a * x(2, 2) + ia * x(0, 0);
  y *= 1.0 / (a + ia);
  return y;
}

ComplexMatrix apply_map_last_qutrit(const ComplexMatrix& rho, double alpha) {
  if (rho.rows() != 27 || rho.cols() != 27) {
    throw std::invalid_argument("apply_map_last_qutrit: need a 27x27 operator");
  }
  ComplexMatrix out(27, 27);
  ComplexMatrix block(3, 3);
  for (std::size_t I = 0; I < 9; ++I) {
    for (std::size_t J = 0; J < 9; ++J) {
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) block(r, c) = rho(3 * I + r, 3 * J + c);
      }
      const auto mapped = lambda_alpha_map(block, alpha);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) out(3 * I + r, 3 * J + c) = mapped(r, c);
      }
    }
  }
  return out;
}

double map_witness(const DensityMatrix& rho, double alpha) {
  if (rho.dims() != Dims{3, 3, 3}) throw std::invalid_argument("map_witness: need dims [3,3,3]");
  return min_eigenvalue(apply_map_last_qutrit(rho.matrix(), alpha));
}

MapScan map_witness_scan(const DensityMatrix& rho, std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("map_witness_scan: empty alpha grid");
  MapScan scan{0.0, 0.0, {}};
  scan.by_alpha.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double v = map_witness(rho, alphas[i]);
    scan.by_alpha.emplace_back(alphas[i], v);
    if (i == 0 || v < scan.lambda_min) {
      scan.lambda_min = v;
      scan.argmin_alpha = alphas[i];
    }
  }
  return scan;
}

std::vector<double> dur_block_gamma_eigenvalues(std::size_t parties, double x, std::size_t k) {
  const auto block = dur_block(parties, x, k);
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < parties; ++s) {
    if (s != k - 1) rest.push_back(s);
  }
  const std::vector<std::size_t> single{k - 1};
  const auto compressed = compress_repeated_digits(block, rest, single);
  const std::vector<std::size_t> dims{2, 2};
  return hermitian_eigenvalues(partial_transpose(compressed, dims, Bipartition({0}, {1})));
}

namespace {

CriterionResult make_result(std::string name, double value, Polarity polarity, double tol,
                            std::vector<std::size_t> left = {},
                            std::vector<std::size_t> right = {}) {
  CriterionResult r;
  r.criterion = std::move(name);
  r.value = value;
  r.polarity = polarity;
  r.verdict = classify(value, polarity, tol);
  r.left = std::move(left);
  r.right = std::move(right);
  r.tolerance = tol;
  return r;
}

}  // namespace

std::vector<CriterionResult> analyze_state(const DensityMatrix& rho,
                                           const std::vector<Bipartition>& cuts,
                                           std::span<const double> alphas, double tol) {
  std::vector<CriterionResult> out;
  for (const auto& cut : cuts) {
    out.push_back(make_result("ppt_min_eigenvalue", ppt_min_eigenvalue(rho, cut),
                              Polarity::negative_detects, tol, cut.left(), cut.right()));
    out.push_back(make_result("realignment_excess", realignment_excess(rho, cut),
                              Polarity::positive_detects, tol, cut.left(), cut.right()));
  }
  const auto& dims = rho.dims();
  const bool uniform = std::all_of(dims.begin(), dims.end(), [&](auto d) { return d == dims[0]; });
  if (uniform) {
    for (std::size_t k = 1; k <= dims.size() / 2; ++k) {
      std::vector<std::size_t> left, right;
      for (std::size_t s = 0; s < dims.size(); ++s) (s < k ? left : right).push_back(s);
      out.push_back(make_result("projection_witness", projection_witness(rho, k),
                                Polarity::negative_detects, tol, left, right));
    }
  }
  if (dims == Dims{3, 3, 3} && !alphas.empty()) {
    const auto scan = map_witness_scan(rho, alphas);
    out.push_back(
        make_result("map_witness", scan.lambda_min, Polarity::negative_detects, tol, {0, 1}, {2}));
  }
  return out;
}

}  // namespace entanglia
