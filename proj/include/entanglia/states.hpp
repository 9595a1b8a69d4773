#pragma once

#include <cstddef>
#include <vector>

#include "entanglia/tensor.hpp"

namespace entanglia {

/// Pure state on a tensor-product space; unit norm within 1e-12.
class StateVector {
 public:
  StateVector(std::vector<Complex> amplitudes, Dims dims);
  /// Scales `amplitudes` to unit norm first.
  static StateVector normalized(std::vector<Complex> amplitudes, Dims dims);

  const std::vector<Complex>& amplitudes() const { return amps_; }
  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return amps_.size(); }

  DensityMatrix projector() const;

 private:
  std::vector<Complex> amps_;
  Dims dims_;
};

/// Composite-dimension guard for the O(D^3) routines downstream.
inline constexpr std::size_t kDefaultDimCap = 4096;

StateVector ghz(std::size_t d, std::size_t n, std::size_t cap = kDefaultDimCap);

/// p |GHZ><GHZ| + (1-p)/d^n I
DensityMatrix isotropic_ghz(std::size_t d, std::size_t n, double p,
                            std::size_t cap = kDefaultDimCap);

/// (1/sqrt d) sum_j e^{2 pi i j q / d} |j, j+i_1, ..., j+i_{n-1}>  (addition mod d)
StateVector ghz_basis_state(std::size_t d, std::size_t n, std::size_t q,
                            const std::vector<std::size_t>& shifts,
                            std::size_t cap = kDefaultDimCap);

/// Masked code word for message k: the phase-q = k GHZ basis state with zero shifts.
StateVector fourier_masked_state(std::size_t d, std::size_t n, std::size_t k,
                                 std::size_t cap = kDefaultDimCap);

/// |0..0 1_k 0..0>, k is 1-based.
StateVector dur_flip_state(std::size_t parties, std::size_t k);
/// |1..1 0_k 1..1>, k is 1-based.
StateVector dur_antiflip_state(std::size_t parties, std::size_t k);

/// x |Psi_G><Psi_G| + (1-x)/(2N) sum_k (P_k + Pbar_k), Psi_G the N-qubit GHZ state.
DensityMatrix dur_state(std::size_t parties, double x, std::size_t cap = kDefaultDimCap);

/// (x/N) |Psi_G><Psi_G| + (1-x)/(2N) (P_k + Pbar_k); trace 1/N, returned unnormalized.
DensityMatrix dur_block(std::size_t parties, double x, std::size_t k,
                        std::size_t cap = kDefaultDimCap);

struct UbbSet {
  std::vector<StateVector> full;     // 28 members
  std::vector<StateVector> reduced;  // 22 members, full minus the psi(0,0)_l
};

/// Three-qutrit unextendible biseparable set and its reduced subset, all normalized.
UbbSet ubb_states();

/// (1/5)(I_27 - sum over the reduced UBB set of its projectors); rank five.
DensityMatrix rho0();

}  // namespace entanglia
