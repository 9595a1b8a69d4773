// Compiled with -mavx2 -mfma. Nothing in this file may run before
// cpu_has_avx2() has been checked by the dispatcher.

#include "entanglia/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace entanglia::kernels {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].

inline __m256d cmul_scalar_vec(__m256d s_re, __m256d s_im, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  const __m256d t = _mm256_mul_pd(s_im, swapped);
  // even lanes: s_re*re - s_im*im, odd lanes: s_re*im + s_im*re
  return _mm256_fmaddsub_pd(s_re, v, t);
}

void gemm_avx2(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
               std::size_t n) {
  std::fill(c, c + m * n, Complex{});
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    for (std::size_t l = 0; l < k; ++l) {
      const Complex s = a[i * k + l];
      if (s == Complex{}) continue;
      const __m256d s_re = _mm256_set1_pd(s.real());
      const __m256d s_im = _mm256_set1_pd(s.imag());
      const double* brow = reinterpret_cast<const double*>(b + l * n);
      for (std::size_t j = 0; j < pairs; ++j) {
        const __m256d bv = _mm256_loadu_pd(brow + 4 * j);
        const __m256d cv = _mm256_loadu_pd(crow + 4 * j);
        _mm256_storeu_pd(crow + 4 * j, _mm256_add_pd(cv, cmul_scalar_vec(s_re, s_im, bv)));
      }
      if (n % 2 != 0) c[i * n + n - 1] += s * b[l * n + n - 1];
    }
  }
}

void rotate_avx2(Complex* p, Complex* q, std::size_t n, Complex m00, Complex m01, Complex m10,
                 Complex m11) {
  const __m256d a_re = _mm256_set1_pd(m00.real()), a_im = _mm256_set1_pd(m00.imag());
  const __m256d b_re = _mm256_set1_pd(m01.real()), b_im = _mm256_set1_pd(m01.imag());
  const __m256d c_re = _mm256_set1_pd(m10.real()), c_im = _mm256_set1_pd(m10.imag());
  const __m256d d_re = _mm256_set1_pd(m11.real()), d_im = _mm256_set1_pd(m11.imag());
  double* pd = reinterpret_cast<double*>(p);
  double* qd = reinterpret_cast<double*>(q);
  const std::size_t pairs = n / 2;
  for (std::size_t j = 0; j < pairs; ++j) {
    const __m256d x = _mm256_loadu_pd(pd + 4 * j);
    const __m256d y = _mm256_loadu_pd(qd + 4 * j);
    const __m256d np = _mm256_add_pd(cmul_scalar_vec(a_re, a_im, x), cmul_scalar_vec(b_re, b_im, y));
    const __m256d nq = _mm256_add_pd(cmul_scalar_vec(c_re, c_im, x), cmul_scalar_vec(d_re, d_im, y));
    _mm256_storeu_pd(pd + 4 * j, np);
    _mm256_storeu_pd(qd + 4 * j, nq);
  }
  if (n % 2 != 0) {
    const Complex x = p[n - 1];
    const Complex y = q[n - 1];
    p[n - 1] = m00 * x + m01 * y;
    q[n - 1] = m10 * x + m11 * y;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq_avx2(const Complex* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < len; ++i) s += xd[i] * xd[i];
  return s;
}

Complex dotc_avx2(const Complex* x, const Complex* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  // conj(x) y: re = xr yr + xi yi ; im = xr yi - xi yr
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const std::size_t pairs = n / 2;
  for (std::size_t j = 0; j < pairs; ++j) {
    const __m256d xv = _mm256_loadu_pd(xd + 4 * j);
    const __m256d yv = _mm256_loadu_pd(yd + 4 * j);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  // acc_im lanes: [xr yi, xi yr, ...]
  alignas(32) double im[4];
  _mm256_store_pd(im, acc_im);
  Complex s{hsum(acc_re), im[0] - im[1] + im[2] - im[3]};
  if (n % 2 != 0) s += std::conj(x[n - 1]) * y[n - 1];
  return s;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Backend::avx2, gemm_avx2, rotate_avx2, norm_sq_avx2, dotc_avx2};
  return &table;
}

}  // namespace entanglia::kernels
