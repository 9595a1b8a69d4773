#include "entanglia/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entanglia {

namespace {

std::size_t checked_power(std::size_t d, std::size_t n, std::size_t cap) {
  if (d < 2) throw std::invalid_argument("local dimension must be at least 2");
  if (n < 2) throw std::invalid_argument("party count must be at least 2");
  std::size_t D = 1;
  for (std::size_t i = 0; i < n; ++i) {
    D *= d;
    if (D > cap) {
      throw std::invalid_argument("composite dimension exceeds cap " + std::to_string(cap));
    }
  }
  return D;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

Complex root_of_unity(std::size_t d, std::size_t power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes, Dims dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (total_dim(dims_) != amps_.size()) {
    throw std::invalid_argument("StateVector: length does not match dims");
  }
  if (std::abs(norm(amps_) - 1.0) > 1e-12) throw std::invalid_argument("StateVector: norm is not 1");
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes, Dims dims) {
  const double nrm = norm(amplitudes);
  if (nrm == 0.0) throw std::invalid_argument("StateVector: zero vector");
  for (auto& a : amplitudes) a /= nrm;
  return StateVector(std::move(amplitudes), std::move(dims));
}

DensityMatrix StateVector::projector() const {
  return DensityMatrix(ComplexMatrix::outer(amps_, amps_), dims_);
}

StateVector ghz(std::size_t d, std::size_t n, std::size_t cap) {
  checked_power(d, n, cap);
  return ghz_basis_state(d, n, 0, std::vector<std::size_t>(n - 1, 0), cap);
}

DensityMatrix isotropic_ghz(std::size_t d, std::size_t n, double p, std::size_t cap) {
  check_probability(p, "p");
  const auto g = ghz(d, n, cap);
  ComplexMatrix m = ComplexMatrix::outer(g.amplitudes(), g.amplitudes()) * Complex(p);
  const double noise = (1.0 - p) / static_cast<double>(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) m(i, i) += noise;
  return DensityMatrix(std::move(m), g.dims());
}

StateVector ghz_basis_state(std::size_t d, std::size_t n, std::size_t q,
                            const std::vector<std::size_t>& shifts, std::size_t cap) {
  const std::size_t D = checked_power(d, n, cap);
  if (q >= d) throw std::invalid_argument("ghz_basis_state: phase index out of range");
  if (shifts.size() != n - 1) {
    throw std::invalid_argument("ghz_basis_state: need n-1 shift indices");
  }
  for (auto s : shifts) {
    if (s >= d) throw std::invalid_argument("ghz_basis_state: shift index out of range");
  }
  std::vector<Complex> amps(D);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t index = j;
    for (auto s : shifts) index = index * d + (j + s) % d;
    amps[index] = amp * root_of_unity(d, j * q);
  }
  return StateVector(std::move(amps), Dims(n, d));
}

StateVector fourier_masked_state(std::size_t d, std::size_t n, std::size_t k, std::size_t cap) {
  checked_power(d, n, cap);
  if (k >= d) throw std::invalid_argument("fourier_masked_state: message index out of range");
  return ghz_basis_state(d, n, k, std::vector<std::size_t>(n - 1, 0), cap);
}

namespace {

StateVector basis_state(std::size_t parties, std::size_t index) {
  std::vector<Complex> amps(std::size_t{1} << parties);
  amps.at(index) = 1.0;
  return StateVector(std::move(amps), Dims(parties, 2));
}

void check_flip(std::size_t parties, std::size_t k) {
  if (k < 1 || k > parties) throw std::invalid_argument("Dur flip index out of range");
}

}  // namespace

StateVector dur_flip_state(std::size_t parties, std::size_t k) {
  check_flip(parties, k);
  return basis_state(parties, std::size_t{1} << (parties - k));
}

StateVector dur_antiflip_state(std::size_t parties, std::size_t k) {
  check_flip(parties, k);
  const std::size_t all = (std::size_t{1} << parties) - 1;
  return basis_state(parties, all ^ (std::size_t{1} << (parties - k)));
}

namespace {

ComplexMatrix dur_noise(std::size_t parties, std::size_t k) {
  const auto f = dur_flip_state(parties, k);
  const auto a = dur_antiflip_state(parties, k);
  return ComplexMatrix::outer(f.amplitudes(), f.amplitudes()) +
         ComplexMatrix::outer(a.amplitudes(), a.amplitudes());
}

void check_dur(std::size_t parties, double x, std::size_t cap) {
  if (parties < 3) throw std::invalid_argument("Dur state needs at least 3 parties");
  checked_power(2, parties, cap);
  check_probability(x, "x");
}

}  // namespace

DensityMatrix dur_state(std::size_t parties, double x, std::size_t cap) {
  check_dur(parties, x, cap);
  const auto g = ghz(2, parties, cap);
  ComplexMatrix m = ComplexMatrix::outer(g.amplitudes(), g.amplitudes()) * Complex(x);
  const double w = (1.0 - x) / (2.0 * static_cast<double>(parties));
  for (std::size_t k = 1; k <= parties; ++k) m += dur_noise(parties, k) * Complex(w);
  return DensityMatrix(std::move(m), g.dims());
}

DensityMatrix dur_block(std::size_t parties, double x, std::size_t k, std::size_t cap) {
  check_dur(parties, x, cap);
  check_flip(parties, k);
  const auto g = ghz(2, parties, cap);
  const double N = static_cast<double>(parties);
  ComplexMatrix m = ComplexMatrix::outer(g.amplitudes(), g.amplitudes()) * Complex(x / N);
  m += dur_noise(parties, k) * Complex((1.0 - x) / (2.0 * N));
  return DensityMatrix::unnormalized(std::move(m), g.dims());
}

namespace {

using Qutrit = std::vector<Complex>;

Qutrit ket(std::size_t i) {
  Qutrit v(3);
  v[i] = 1.0;
  return v;
}

Qutrit add(const Qutrit& a, const Qutrit& b, double sign) {
  return {a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2]};
}

std::vector<Complex> triple(const Qutrit& a, const Qutrit& b, const Qutrit& c) {
  return kron(std::span<const Complex>(kron(a, b)), c);
}

// Unnormalized psi(i,j)_l, l = 1..6.
std::vector<Complex> ubb_member(std::size_t i, std::size_t j, int l) {
  const Qutrit e = add(ket(0), ket(1), i == 0 ? 1.0 : -1.0);
  const Qutrit x = add(ket(1), ket(2), j == 0 ? 1.0 : -1.0);
  switch (l) {
    case 1: return triple(ket(0), e, x);
    case 2: return triple(e, ket(2), x);
    case 3: return triple(ket(2), x, e);
    case 4: return triple(e, x, ket(0));
    case 5: return triple(x, ket(0), e);
    case 6: return triple(x, e, ket(2));
  }
  throw std::logic_error("ubb_member: bad label");
}

}  // namespace

UbbSet ubb_states() {
  const Dims dims{3, 3, 3};
  UbbSet set;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (int l = 1; l <= 6; ++l) {
        auto s = StateVector::normalized(ubb_member(i, j, l), dims);
        if (i != 0 || j != 0) set.reduced.push_back(s);
        set.full.push_back(std::move(s));
      }
    }
  }
  for (int l = 1; l <= 5; l += 2) {
    auto a = ubb_member(0, 0, l);
    const auto b = ubb_member(0, 0, l + 1);
    for (std::size_t t = 0; t < a.size(); ++t) a[t] -= b[t];
    auto s = StateVector::normalized(std::move(a), dims);
    set.full.push_back(s);
    set.reduced.push_back(std::move(s));
  }
  const Qutrit plus{1.0, 1.0, 1.0};
  auto s = StateVector::normalized(triple(plus, plus, plus), dims);
  set.full.push_back(s);
  set.reduced.push_back(std::move(s));
  return set;
}

DensityMatrix rho0() {
  ComplexMatrix m = ComplexMatrix::identity(27);
  for (const auto& s : ubb_states().reduced) {
    m -= ComplexMatrix::outer(s.amplitudes(), s.amplitudes());
  }
  m *= Complex(0.2);
  return DensityMatrix(std::move(m), Dims{3, 3, 3});
}

}  // namespace entanglia
