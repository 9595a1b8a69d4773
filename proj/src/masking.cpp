#include "entanglia/masking.hpp"

#include <algorithm>
#include <stdexcept>

#include "entanglia/channels.hpp"

namespace entanglia {

std::vector<StateVector> mask_messages(std::size_t d, std::size_t n, std::size_t cap) {
  if (d < 2 || n < 2) throw std::invalid_argument("mask_messages: need d >= 2 and n >= 2");
  std::vector<StateVector> out;
  out.reserve(d);
  for (std::size_t k = 0; k < d; ++k) out.push_back(fourier_masked_state(d, n, k, cap));
  return out;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m == 0 || m > n) return out;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = m;
    while (i-- > 0) {
      if (idx[i] != i + n - m) break;
      if (i == 0) return out;
    }
    ++idx[i];
    for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

MaskingReport uniformity_check(const std::vector<DensityMatrix>& states, std::size_t m,
                               double tol) {
  if (states.empty()) throw std::invalid_argument("uniformity_check: no states");
  const Dims& dims = states.front().dims();
  for (const auto& s : states) {
    if (s.dims() != dims) throw std::invalid_argument("uniformity_check: dims differ");
  }
  const std::size_t n = dims.size();
  if (m < 1 || m + 1 > n) throw std::invalid_argument("uniformity_check: m out of range");

  MaskingReport report;
  report.d = dims.front();
  report.n = n;
  report.m = m;
  for (const auto& subset : combinations(n, m)) {
    std::vector<ComplexMatrix> marginals;
    marginals.reserve(states.size());
    for (const auto& s : states) marginals.push_back(partial_trace(s, subset).matrix());
    for (std::size_t a = 0; a < marginals.size(); ++a) {
      for (std::size_t b = a + 1; b < marginals.size(); ++b) {
        ComplexMatrix diff = marginals[a];
        diff -= marginals[b];
        report.max_marginal_distance = std::max(report.max_marginal_distance, trace_norm(diff));
      }
    }
    ++report.subsets_checked;
  }
  report.uniform = report.max_marginal_distance <= tol;
  return report;
}

MaskingReport noisy_masking_pipeline(std::size_t d, std::size_t n, double p, std::size_t m,
                                     std::size_t cap) {
  const auto channel = canonical_pauli_channel(d, n, p, cap);
  std::vector<DensityMatrix> outputs;
  for (const auto& psi : mask_messages(d, n, cap)) {
    outputs.push_back(apply_channel(channel, psi.projector()));
  }
  auto report = uniformity_check(outputs, m);
  report.noisy = true;
  report.channel = channel.name();
  return report;
}

std::vector<DensityMatrix> product_control_states(std::size_t d, std::size_t n, std::size_t cap) {
  if (d < 2 || n < 2) throw std::invalid_argument("product_control_states: need d >= 2, n >= 2");
  const Dims dims(n, d);
  const std::size_t dim = total_dim(dims);
  if (dim > cap) throw std::invalid_argument("product_control_states: dimension cap exceeded");
  std::size_t repunit = 0;
  for (std::size_t s = 0; s < n; ++s) repunit = repunit * d + 1;
  std::vector<DensityMatrix> out;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Complex> amps(dim);
    amps[k * repunit] = 1.0;
    out.push_back(StateVector(std::move(amps), dims).projector());
  }
  return out;
}

MaskingReport dur_masking_pipeline(std::size_t parties, double x, std::size_t m) {
  const auto channel = dur_channel_corrected(parties, x);
  const std::size_t dim = std::size_t{1} << parties;
  const Dims dims(parties, 2);
  std::vector<DensityMatrix> outputs;
  for (double sign : {1.0, -1.0}) {
    std::vector<Complex> amps(dim);
    amps[0] = 1.0;
    amps[dim - 1] = sign;
    const auto psi = StateVector::normalized(std::move(amps), dims);
    outputs.push_back(apply_channel(channel, psi.projector()));
  }
  auto report = uniformity_check(outputs, m);
  report.noisy = true;
  report.channel = channel.name();
  return report;
}

}  // namespace entanglia
