#pragma once

// Multipartite index manipulation and dense Hermitian/singular-value
// routines. Subsystem 0 is the most significant digit of a composite index.

#include <cstddef>
#include <span>
#include <vector>

#include "entanglia/matrix.hpp"

namespace entanglia {

using Dims = std::vector<std::size_t>;

namespace tolerance {
inline constexpr double hermitian = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double psd_strict = 1e-11;
}  // namespace tolerance

enum class Validation { standard, strict };

std::size_t total_dim(std::span<const std::size_t> dims);

struct ValidationReport {
  double hermiticity_defect = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool ok = false;
};

/// Square matrix on a tensor-product space. Unit trace unless constructed through
/// `unnormalized`, which must be requested explicitly by the caller.
class DensityMatrix {
 public:
  /// Checks shape, dims, finiteness, Hermiticity and unit trace. Positivity is checked by
  /// `validate`, which costs an eigensolve.
  DensityMatrix(ComplexMatrix m, Dims dims);

  static DensityMatrix unnormalized(ComplexMatrix m, Dims dims);
  /// Constructs and runs the full positivity check, throwing on failure.
  static DensityMatrix validated(ComplexMatrix m, Dims dims, Validation mode = Validation::standard);
  static DensityMatrix maximally_mixed(Dims dims);

  const ComplexMatrix& matrix() const { return m_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return m_.rows(); }
  std::size_t parties() const { return dims_.size(); }
  bool is_normalized() const { return normalized_; }

  ValidationReport validate(Validation mode = Validation::standard) const;

 private:
  DensityMatrix(ComplexMatrix m, Dims dims, bool normalized);

  ComplexMatrix m_;
  Dims dims_;
  bool normalized_ = true;
};

/// Split of subsystem positions into two nonempty, disjoint, sorted groups.
class Bipartition {
 public:
  Bipartition(std::vector<std::size_t> left, std::vector<std::size_t> right);
  /// Right group is the complement of `left` in {0, ..., parties-1}.
  static Bipartition from_left(std::vector<std::size_t> left, std::size_t parties);

  const std::vector<std::size_t>& left() const { return left_; }
  const std::vector<std::size_t>& right() const { return right_; }
  std::size_t parties() const { return left_.size() + right_.size(); }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
};

/// All cuts with one party on the left, in party order.
std::vector<Bipartition> single_party_cuts(std::size_t parties);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

/// Reduction onto `keep` (any order; result keeps ascending subsystem order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);

/// Transposes the indices of the left group of `cut`.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                const Bipartition& cut);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut);

/// New subsystem i is old subsystem order[i].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> order);

/// m^2 x n^2 realigned matrix R[(i,j),(k,l)] = rho[(i,k),(j,l)] with i,j ranging over the
/// left group (dimension m) and k,l over the right group (dimension n). Subsystems are
/// reordered to left-then-right first.
ComplexMatrix realign(const DensityMatrix& rho, const Bipartition& cut);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]; empty unless requested
  int sweeps = 0;
};

/// Cyclic Jacobi. Throws std::invalid_argument if `h` is not square or not Hermitian
/// within 1e-9 (relative to max(1, |h|_F)).
EigenDecomposition hermitian_eigen(const ComplexMatrix& h, bool want_vectors = false);
/// Ascending eigenvalues by Householder tridiagonalization and implicit QL. Same input
/// checks as `hermitian_eigen`; much cheaper when vectors are not needed.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

/// Descending singular values by one-sided Jacobi on the shorter side.
std::vector<double> singular_values(const ComplexMatrix& m);
/// Descending singular values as sqrt of the eigenvalues of the smaller Gram matrix,
/// clamped at zero. Loses accuracy below sqrt(eps) * sigma_max.
std::vector<double> singular_values_gram(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);

}  // namespace entanglia
