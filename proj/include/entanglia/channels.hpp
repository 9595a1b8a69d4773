#pragma once

// Weighted Kraus channels: rho -> sum_i w_i K_i rho K_i^dagger. Weights stay outside the
// operators so mixing probabilities appear unchanged in the term list.

#include <string>
#include <utility>
#include <vector>

#include "entanglia/states.hpp"
#include "entanglia/tensor.hpp"

namespace entanglia {

enum class CompletenessPolicy { strict_cptp, verified_on_inputs };

std::string to_string(CompletenessPolicy p);
CompletenessPolicy policy_from_string(const std::string& s);

struct KrausTerm {
  double weight = 0.0;
  ComplexMatrix op;
};

class KrausChannel {
 public:
  KrausChannel(std::vector<KrausTerm> terms, Dims input_dims, CompletenessPolicy policy,
               std::string name = "custom");

  const std::vector<KrausTerm>& terms() const { return terms_; }
  const Dims& input_dims() const { return dims_; }
  std::size_t dim() const { return total_dim(dims_); }
  CompletenessPolicy policy() const { return policy_; }
  const std::string& name() const { return name_; }

  /// sum_i w_i K_i^dagger K_i, accumulated in extended precision.
  ComplexMatrix completeness() const;
  /// |completeness() - I|_F
  double completeness_residual() const;

 private:
  std::vector<KrausTerm> terms_;
  Dims dims_;
  CompletenessPolicy policy_;
  std::string name_;
};

/// Never renormalizes. The result is flagged unnormalized when its trace is off by more
/// than the trace tolerance (or the input was unnormalized).
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);
/// Raw action on an arbitrary square operator.
ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& m);

/// Weyl operator Z^q X^i on C^d: |j> -> e^{2 pi i q (j+i)/d} |j+i mod d>.
ComplexMatrix generalized_pauli(std::size_t d, std::size_t q, std::size_t i);

/// Pauli matrices.
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

/// (p, I) plus ((1-p)/d^n, Z^q (x) X^{i_1} (x) ... (x) X^{i_{n-1}}) over all d^n index tuples.
KrausChannel canonical_pauli_channel(std::size_t d, std::size_t n, double p,
                                     std::size_t cap = kDefaultDimCap);

/// The eight-operator tripartite qubit channel with K_1 weighted p + (1-p)/8.
KrausChannel example1_channel(double p);

/// d^2 Hilbert-Schmidt orthonormal observables: |m><m|, then A+_{mn}, A-_{mn} for m < n.
std::vector<ComplexMatrix> loo_set(std::size_t d);

/// Operators built as written: K_0 = I, K_r = W (x) A_{j+i_1,j} (x) ... with r running over
/// (j, i_1, ..., i_{n-1}) j-major; A_{m,n} = |m><n| + |n><m| for m != n, I_d otherwise.
KrausChannel literal_ghz_noise_kraus(std::size_t d, std::size_t n, double p = 0.5,
                                    std::size_t cap = kDefaultDimCap);

/// Operators K_0..K_{2N+1} as written, weights x and (1-x)/(2N).
KrausChannel dur_channel_literal(std::size_t parties, double x);

/// (x, I) plus ((1-x)/(2N), |t><b|) for every flip target t and computational basis vector b.
/// Acts as rho -> x rho + (1-x) tr(rho) (1/2N) sum_k (P_k + Pbar_k).
KrausChannel dur_channel_corrected(std::size_t parties, double x);

struct ProbeResult {
  std::string label;
  double input_trace = 0.0;
  double output_trace = 0.0;
  double trace_residual = 0.0;
  double min_eigenvalue = 0.0;
  bool output_psd = false;
};

struct ChannelReport {
  std::string channel;
  CompletenessPolicy policy = CompletenessPolicy::strict_cptp;
  bool trace_preserving_globally = false;
  double completeness_residual = 0.0;
  std::vector<ProbeResult> probes;
  bool output_psd = true;
  /// Named residuals of construction-specific claims (e.g. action on a reference state).
  std::vector<std::pair<std::string, double>> claims;

  bool policy_satisfied() const;
};

inline constexpr double kCompletenessTolerance = 1e-12;

ChannelReport verify_channel(const KrausChannel& ch,
                             const std::vector<std::pair<std::string, DensityMatrix>>& probes);

/// Reports with the claims each construction's derivation makes.
ChannelReport audit_literal_ghz_noise(std::size_t d, std::size_t n, double p = 0.5);
ChannelReport audit_dur_literal(std::size_t parties, double x);

}  // namespace entanglia
