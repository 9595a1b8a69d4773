#include "entanglia/kernels.hpp"

#include <algorithm>

namespace entanglia::kernels {
namespace {

void gemm_scalar(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
                 std::size_t n) {
  std::fill(c, c + m * n, Complex{});
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const Complex s = a[i * k + l];
      if (s == Complex{}) continue;
      const Complex* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += s * brow[j];
    }
  }
}

void rotate_scalar(Complex* p, Complex* q, std::size_t n, Complex m00, Complex m01, Complex m10,
                   Complex m11) {
  for (std::size_t i = 0; i < n; ++i) {
    const Complex x = p[i];
    const Complex y = q[i];
    p[i] = m00 * x + m01 * y;
    q[i] = m10 * x + m11 * y;
  }
}

double norm_sq_scalar(const Complex* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

Complex dotc_scalar(const Complex* x, const Complex* y, std::size_t n) {
  Complex s{};
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Backend::scalar, gemm_scalar, rotate_scalar, norm_sq_scalar,
                                 dotc_scalar};
  return table;
}

}  // namespace entanglia::kernels
