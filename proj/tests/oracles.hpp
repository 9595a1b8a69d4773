#pragma once

// Independent reference implementations for the tests. Everything here works by decoding
// every composite index into digits and looping, with no shared code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "entanglia/matrix.hpp"
#include "entanglia/tensor.hpp"

namespace oracle {

using entanglia::Complex;
using entanglia::ComplexMatrix;

inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    out[s] = index % dims[s];
    index /= dims[s];
  }
  return out;
}

inline std::size_t compose(const std::vector<std::size_t>& dig,
                           const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + dig[s];
  return idx;
}

inline std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

/// Swaps row and column digits of every subsystem in `left`.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                       const std::vector<std::size_t>& left) {
  const std::size_t n = product(dims);
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      auto dr = digits(r, dims), dc = digits(c, dims);
      for (auto s : left) std::swap(dr[s], dc[s]);
      out(compose(dr, dims), compose(dc, dims)) = m(r, c);
    }
  }
  return out;
}

/// Sums over matching digits of every subsystem outside `keep` (ascending).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> kdims;
  for (auto s : keep) kdims.push_back(dims[s]);
  const std::size_t n = product(dims), k = product(kdims);
  ComplexMatrix out(k, k);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto dr = digits(r, dims), dc = digits(c, dims);
      bool traced_match = true;
      for (std::size_t s = 0; s < dims.size(); ++s) {
        const bool kept = std::find(keep.begin(), keep.end(), s) != keep.end();
        if (!kept && dr[s] != dc[s]) traced_match = false;
      }
      if (!traced_match) continue;
      std::vector<std::size_t> kr, kc;
      for (auto s : keep) {
        kr.push_back(dr[s]);
        kc.push_back(dc[s]);
      }
      out(compose(kr, kdims), compose(kc, kdims)) += m(r, c);
    }
  }
  return out;
}

/// Two-party realignment R[(i,j),(k,l)] = rho[(i,k),(j,l)].
inline ComplexMatrix realign_two_party(const ComplexMatrix& rho, std::size_t da, std::size_t db) {
  ComplexMatrix out(da * da, db * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * da + j, k * db + l) = rho(i * db + k, j * db + l);
  return out;
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
inline std::pair<double, double> eig2(const ComplexMatrix& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const double disc = std::sqrt((a - d) * (a - d) / 4.0 + std::norm(h(0, 1)));
  return {(a + d) / 2.0 - disc, (a + d) / 2.0 + disc};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  auto a = random_matrix(rng, n, n);
  ComplexMatrix h = a + a.adjoint();
  h *= 0.5;
  return h;
}

inline std::vector<Complex> random_unit_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  double s = 0.0;
  for (auto& z : v) {
    z = {g(rng), g(rng)};
    s += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(s);
  return v;
}

/// Random full-rank density matrix A A^dagger / tr.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  auto a = random_matrix(rng, n, n);
  ComplexMatrix rho = a * a.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

/// Plain triple loop.
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace oracle
