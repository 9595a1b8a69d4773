#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "entanglia/states.hpp"
#include "entanglia/tensor.hpp"

namespace entanglia {

inline constexpr double kUniformityTolerance = 1e-10;

struct MaskingReport {
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double max_marginal_distance = 0.0;
  bool uniform = false;
  bool noisy = false;
  std::string channel;  // empty for noiseless runs
  std::size_t subsets_checked = 0;
};

/// fourier_masked_state(d, n, k) for k = 0..d-1.
std::vector<StateVector> mask_messages(std::size_t d, std::size_t n,
                                       std::size_t cap = kDefaultDimCap);

/// Lexicographic m-element subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t m);

/// Largest pairwise trace distance |rho_a - rho_b|_1 between m-party marginals, taken over
/// every m-subset and every pair of states.
MaskingReport uniformity_check(const std::vector<DensityMatrix>& states, std::size_t m,
                               double tol = kUniformityTolerance);

/// Masked messages sent through canonical_pauli_channel(d, n, p), then uniformity_check.
MaskingReport noisy_masking_pipeline(std::size_t d, std::size_t n, double p, std::size_t m,
                                     std::size_t cap = kDefaultDimCap);

/// |k>^{(x) n} for k = 0..d-1, the computational control set with revealing marginals.
std::vector<DensityMatrix> product_control_states(std::size_t d, std::size_t n,
                                                  std::size_t cap = kDefaultDimCap);

/// GHZ pair (|0..0> +- |1..1>)/sqrt 2 through dur_channel_corrected(N, x), checked at m.
MaskingReport dur_masking_pipeline(std::size_t parties, double x, std::size_t m);

}  // namespace entanglia
