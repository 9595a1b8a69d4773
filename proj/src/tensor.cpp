#include "entanglia/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "entanglia/kernels.hpp"

namespace entanglia {

std::size_t total_dim(std::span<const std::size_t> dims) {
  std::size_t d = 1;
  for (auto x : dims) d *= x;
  return d;
}

namespace {

void check_dims(const ComplexMatrix& m, const Dims& dims) {
  if (!m.is_square()) throw std::invalid_argument("DensityMatrix: matrix is not square");
  if (dims.empty()) throw std::invalid_argument("DensityMatrix: empty dimension list");
  for (auto d : dims) {
    if (d < 2) throw std::invalid_argument("DensityMatrix: subsystem dimension below 2");
  }
  if (total_dim(dims) != m.rows()) {
    throw std::invalid_argument("DensityMatrix: dimension list does not match matrix side");
  }
  if (!m.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
}

// Row-major strides: stride[s] = prod_{t > s} dims[t].
std::vector<std::size_t> strides(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

void check_cut(const Bipartition& cut, std::size_t parties) {
  if (cut.parties() != parties) {
    throw std::invalid_argument("bipartition does not cover " + std::to_string(parties) +
                                " subsystems");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, Dims dims, bool normalized)
    : m_(std::move(m)), dims_(std::move(dims)), normalized_(normalized) {
  check_dims(m_, dims_);
  const double scale = std::max(1.0, m_.frobenius_norm());
  if (m_.hermiticity_defect() > tolerance::hermitian * scale) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  if (normalized_ && std::abs(m_.trace() - 1.0) > tolerance::trace) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Dims dims)
    : DensityMatrix(std::move(m), std::move(dims), true) {}

DensityMatrix DensityMatrix::unnormalized(ComplexMatrix m, Dims dims) {
  return DensityMatrix(std::move(m), std::move(dims), false);
}

DensityMatrix DensityMatrix::validated(ComplexMatrix m, Dims dims, Validation mode) {
  DensityMatrix rho(std::move(m), std::move(dims));
  const auto report = rho.validate(mode);
  if (!report.ok) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(report.min_eigenvalue));
  }
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const auto d = total_dim(dims);
  return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)),
                       std::move(dims));
}

ValidationReport DensityMatrix::validate(Validation mode) const {
  ValidationReport r;
  r.hermiticity_defect = m_.hermiticity_defect();
  r.trace_error = normalized_ ? std::abs(m_.trace() - 1.0) : 0.0;
  r.min_eigenvalue = min_eigenvalue(m_);
  const double floor = mode == Validation::strict ? tolerance::psd_strict : tolerance::psd;
  r.ok = r.hermiticity_defect <= tolerance::hermitian * std::max(1.0, m_.frobenius_norm()) &&
         r.trace_error <= tolerance::trace && r.min_eigenvalue >= -floor;
  return r;
}

Bipartition::Bipartition(std::vector<std::size_t> left, std::vector<std::size_t> right)
    : left_(std::move(left)), right_(std::move(right)) {
  std::sort(left_.begin(), left_.end());
  std::sort(right_.begin(), right_.end());
  if (left_.empty() || right_.empty()) {
    throw std::invalid_argument("Bipartition: both groups must be nonempty");
  }
  std::vector<std::size_t> all;
  std::merge(left_.begin(), left_.end(), right_.begin(), right_.end(), std::back_inserter(all));
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] != i) {
      throw std::invalid_argument("Bipartition: groups must partition {0..n-1}");
    }
  }
}

Bipartition Bipartition::from_left(std::vector<std::size_t> left, std::size_t parties) {
  std::vector<std::size_t> right;
  for (std::size_t i = 0; i < parties; ++i) {
    if (std::find(left.begin(), left.end(), i) == left.end()) right.push_back(i);
  }
  for (auto i : left) {
    if (i >= parties) throw std::invalid_argument("Bipartition: index out of range");
  }
  return Bipartition(std::move(left), std::move(right));
}

std::vector<Bipartition> single_party_cuts(std::size_t parties) {
  std::vector<Bipartition> cuts;
  for (std::size_t i = 0; i < parties; ++i) cuts.push_back(Bipartition::from_left({i}, parties));
  return cuts;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  ComplexMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex s = a(i, j);
      if (s == Complex{}) continue;
      for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = s * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("kron: no factors");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  const auto& dims = rho.dims();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("partial_trace: repeated subsystem index");
  }
  if (keep.back() >= dims.size()) throw std::invalid_argument("partial_trace: index out of range");

  const auto st = strides(dims);
  Dims kept_dims;
  for (auto k : keep) kept_dims.push_back(dims[k]);
  const auto kept_st = strides(kept_dims);

  const std::size_t D = rho.dim();
  std::vector<std::size_t> kept_index(D, 0), traced_index(D, 0);
  for (std::size_t r = 0; r < D; ++r) {
    std::size_t traced = 0, ki = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const std::size_t digit = (r / st[s]) % dims[s];
      if (ki < keep.size() && keep[ki] == s) {
        kept_index[r] += digit * kept_st[ki];
        ++ki;
      } else {
        traced = traced * dims[s] + digit;
      }
    }
    traced_index[r] = traced;
  }

  const std::size_t d = total_dim(kept_dims);
  ComplexMatrix out(d, d);
  const auto& m = rho.matrix();
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) {
      if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += m(r, c);
    }
  }
  if (!rho.is_normalized()) return DensityMatrix::unnormalized(std::move(out), kept_dims);
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                const Bipartition& cut) {
  check_cut(cut, dims.size());
  const std::size_t D = total_dim(dims);
  if (m.rows() != D || m.cols() != D) {
    throw std::invalid_argument("partial_transpose: matrix does not match dims");
  }
  const auto st = strides(dims);
  // Contribution of the left-group digits to each composite index.
  std::vector<std::size_t> left_part(D, 0);
  for (std::size_t r = 0; r < D; ++r) {
    for (auto s : cut.left()) left_part[r] += ((r / st[s]) % dims[s]) * st[s];
  }
  ComplexMatrix out(D, D);
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) {
      const std::size_t r2 = r - left_part[r] + left_part[c];
      const std::size_t c2 = c - left_part[c] + left_part[r];
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut) {
  return partial_transpose(rho.matrix(), rho.dims(), cut);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> order) {
  const std::size_t n = dims.size();
  if (order.size() != n) throw std::invalid_argument("permute_subsystems: order size mismatch");
  std::vector<std::size_t> check(order.begin(), order.end());
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (check[i] != i) throw std::invalid_argument("permute_subsystems: not a permutation");
  }
  const std::size_t D = total_dim(dims);
  if (m.rows() != D || m.cols() != D) {
    throw std::invalid_argument("permute_subsystems: matrix does not match dims");
  }
  const auto old_st = strides(dims);
  Dims new_dims(n);
  for (std::size_t i = 0; i < n; ++i) new_dims[i] = dims[order[i]];
  const auto new_st = strides(new_dims);

  std::vector<std::size_t> map(D, 0);
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      map[r] += ((r / old_st[order[i]]) % dims[order[i]]) * new_st[i];
    }
  }
  ComplexMatrix out(D, D);
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) out(map[r], map[c]) = m(r, c);
  }
  return out;
}

ComplexMatrix realign(const DensityMatrix& rho, const Bipartition& cut) {
  const auto& dims = rho.dims();
  check_cut(cut, dims.size());
  std::vector<std::size_t> order(cut.left());
  order.insert(order.end(), cut.right().begin(), cut.right().end());
  const ComplexMatrix p = permute_subsystems(rho.matrix(), dims, order);

  std::size_t m = 1, n = 1;
  for (auto s : cut.left()) m *= dims[s];
  for (auto s : cut.right()) n *= dims[s];
  ComplexMatrix out(m * m, n * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) out(i * m + j, k * n + l) = p(i * n + k, j * n + l);
      }
    }
  }
  return out;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-12;

// Sums the strictly upper triangle directly; subtracting the diagonal from full row norms
// cancels catastrophically once the off-diagonal part is small.
double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s += kernels::norm_sq(a.row(i).data() + i + 1, n - i - 1);
  }
  return std::sqrt(2.0 * s);
}

struct Rotation {
  double c, s, t;
  Complex phase;  // a_pq / |a_pq|
};

// Zeroes the (p,q) entry of [[a, g e],[g conj(e), b]] with g >= 0.
Rotation jacobi_rotation(double a, double b, Complex apq) {
  const double g = std::abs(apq);
  const double tau = (b - a) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, t, apq / g};
}

void check_hermitian(const ComplexMatrix& h, double scale) {
  if (!h.is_square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  if (h.hermiticity_defect() > tolerance::hermitian * std::max(1.0, scale)) {
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
  }
}

// Householder reduction to a real symmetric tridiagonal matrix with diagonal d and
// subdiagonal e (e[i] couples i and i+1). Complex subdiagonal phases are removed by a
// diagonal unitary similarity, so only their moduli are kept.
void tridiagonalize(ComplexMatrix a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.rows();
  std::vector<Complex> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;
    const Complex alpha = a(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(alpha));
    const Complex beta =
        std::abs(alpha) == 0.0 ? Complex(-xnorm) : -(alpha / std::abs(alpha)) * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= beta;
      vnorm2 += std::norm(v[i]);
    }
    const double tau = 2.0 / vnorm2;

    // Complex products are spelled out in real arithmetic to keep these O(n^3) loops
    // free of the NaN-recovery path of std::complex multiplication.
    double kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex* row = a.row(i).data();
      double re = 0.0, im = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) {
        re += row[j].real() * v[j].real() - row[j].imag() * v[j].imag();
        im += row[j].real() * v[j].imag() + row[j].imag() * v[j].real();
      }
      w[i] = Complex(tau * re, tau * im);
      kappa += v[i].real() * w[i].real() + v[i].imag() * w[i].imag();
    }
    kappa *= 0.5 * tau;
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= kappa * v[i];

    for (std::size_t i = k + 1; i < n; ++i) {
      Complex* row = a.row(i).data();
      const double vr = v[i].real(), vi = v[i].imag(), wr = w[i].real(), wi = w[i].imag();
      for (std::size_t j = k + 1; j < n; ++j) {
        const double xr = v[j].real(), xi = v[j].imag(), yr = w[j].real(), yi = w[j].imag();
        row[j] -= Complex(vr * yr + vi * yi + wr * xr + wi * xi, vi * yr - vr * yi + wi * xr - wr * xi);
      }
    }
    a(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
  d.resize(n);
  e.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(a(i + 1, i));
}

// Implicit QL with Wilkinson-style shifts on a symmetric tridiagonal matrix. Eigenvalues
// are left in d, unordered.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 30 * n) throw std::runtime_error("hermitian_eigenvalues: QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        const double f = s * e[i], b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& h, bool want_vectors) {
  const double scale = h.frobenius_norm();
  check_hermitian(h, scale);
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  // Rows of vt are the eigenvector columns.
  ComplexMatrix vt = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix{};

  EigenDecomposition out;
  const double target = kConvergence * scale;
  while (out.sweeps < kMaxSweeps && scale > 0.0 && off_diagonal_norm(a) >= target) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) == 0.0) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const auto r = jacobi_rotation(app, aqq, apq);
        const double g = std::abs(apq);
        // a <- U^dagger a on rows p, q
        kernels::rotate(a.row(p).data(), a.row(q).data(), n, r.c, -r.s * r.phase, r.s,
                        r.c * r.phase);
        // a <- a U on columns p, q, recovered from Hermiticity
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = std::conj(a(p, k));
          a(k, q) = std::conj(a(q, k));
        }
        a(p, p) = app - r.t * g;
        a(q, q) = aqq + r.t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          kernels::rotate(vt.row(p).data(), vt.row(q).data(), n, r.c, -r.s * std::conj(r.phase),
                          r.s, r.c * std::conj(r.phase));
        }
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(idx[k], idx[k]).real();
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(idx[k], i);
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  check_hermitian(h, h.frobenius_norm());
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.rows(); ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  std::vector<double> d, e;
  tridiagonalize(std::move(a), d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

double min_eigenvalue(const ComplexMatrix& h) {
  const auto v = hermitian_eigenvalues(h);
  if (v.empty()) throw std::invalid_argument("min_eigenvalue: empty matrix");
  return v.front();
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  // Orthogonalize the rows of x (the shorter side) by plane rotations; the singular
  // values are the final row norms.
  ComplexMatrix x = m.rows() <= m.cols() ? m : m.adjoint();
  const std::size_t r = x.rows(), len = x.cols();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        const double alpha = kernels::norm_sq(x.row(i).data(), len);
        const double beta = kernels::norm_sq(x.row(j).data(), len);
        // Gram entry (i, j) of x x^dagger.
        const Complex gamma = kernels::dotc(x.row(j).data(), x.row(i).data(), len);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const auto rot = jacobi_rotation(alpha, beta, gamma);
        kernels::rotate(x.row(i).data(), x.row(j).data(), len, rot.c, -rot.s * rot.phase, rot.s,
                        rot.c * rot.phase);
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(r);
  for (std::size_t i = 0; i < r; ++i) sv[i] = std::sqrt(kernels::norm_sq(x.row(i).data(), len));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::vector<double> singular_values_gram(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.rows() <= m.cols() ? m * m.adjoint() : m.adjoint() * m;
  auto ev = hermitian_eigenvalues(gram);
  std::vector<double> sv;
  sv.reserve(ev.size());
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) sv.push_back(std::sqrt(std::max(*it, 0.0)));
  return sv;
}

double trace_norm(const ComplexMatrix& m) {
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

}  // namespace entanglia
