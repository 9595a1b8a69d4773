#pragma once

#include <span>
#include <string>
#include <vector>

#include "entanglia/tensor.hpp"

namespace entanglia {

enum class Verdict { entangled, undecided, threshold };
std::string to_string(Verdict v);

/// Which sign of the witness value certifies entanglement.
enum class Polarity { negative_detects, positive_detects };

inline constexpr double kVerdictTolerance = 1e-9;

struct CriterionResult {
  std::string criterion;
  double value = 0.0;
  Verdict verdict = Verdict::undecided;
  Polarity polarity = Polarity::negative_detects;
  std::vector<std::size_t> left;   // empty when the criterion is not tied to a cut
  std::vector<std::size_t> right;
  double tolerance = kVerdictTolerance;
};

Verdict classify(double value, Polarity polarity, double tol = kVerdictTolerance);

/// lambda_min of the partial transpose across `cut`.
double ppt_min_eigenvalue(const DensityMatrix& rho, const Bipartition& cut);

/// 4x4 compression of rho onto span{|a..a>_A |b..b>_B : a, b in {0, 1}} where A and B are
/// disjoint subsystem groups covering every party; basis order |ab> with a major.
ComplexMatrix compress_repeated_digits(const DensityMatrix& rho, std::span<const std::size_t> a,
                                       std::span<const std::size_t> b);

/// Projects onto the repeated-digit span of parties {0..k-1} | {k..n-1} and returns
/// lambda_min of the compressed block's partial transpose. 1 <= k <= floor(n/2).
double projection_witness(const DensityMatrix& rho, std::size_t k);

/// |realign(rho, cut)|_1 - 1
double realignment_excess(const DensityMatrix& rho, const Bipartition& cut);

struct ThresholdSet {
  double ge_threshold;        // 3 / (d^{n-1} + 3)
  double distill_threshold;   // 1 / (1 + d^{n-1})
  double dur_bound_boundary;  // 1 / (N + 1) with N = n
  double dur_bisep_boundary;  // 1 / 2
};

ThresholdSet thresholds(std::size_t d, std::size_t n);

/// The indecomposable qutrit map with parameter alpha in (0, 1].
ComplexMatrix lambda_alpha_map(const ComplexMatrix& x, double alpha);

/// (I_9 (x) Lambda_alpha) applied to a three-qutrit operator.
ComplexMatrix apply_map_last_qutrit(const ComplexMatrix& rho, double alpha);

/// lambda_min of (I_9 (x) Lambda_alpha) rho for a [3,3,3] state.
double map_witness(const DensityMatrix& rho, double alpha);

struct MapScan {
  double lambda_min;
  double argmin_alpha;
  std::vector<std::pair<double, double>> by_alpha;
};

/// map_witness over a grid of alphas; ties resolve to the first grid point.
MapScan map_witness_scan(const DensityMatrix& rho, std::span<const double> alphas);

/// Ascending eigenvalues of the partial transpose of the compressed 2x2 Dur block
/// (remaining parties | party k).
std::vector<double> dur_block_gamma_eigenvalues(std::size_t parties, double x, std::size_t k);

/// Every criterion applicable to the state's shape.
std::vector<CriterionResult> analyze_state(const DensityMatrix& rho,
                                           const std::vector<Bipartition>& cuts,
                                           std::span<const double> alphas,
                                           double tol = kVerdictTolerance);

}  // namespace entanglia
