#pragma once

// Inner-loop kernels with a scalar reference and an AVX2/FMA variant.
// The active backend is picked once at startup from CPUID; set
// ENTANGLIA_KERNELS=scalar to force the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace entanglia::kernels {

using Complex = std::complex<double>;

enum class Backend { scalar, avx2 };

/// C (m x n) = A (m x k) * B (k x n), all row-major and contiguous. C must not alias A or B.
using GemmFn = void (*)(const Complex* a, const Complex* b, Complex* c, std::size_t m,
                        std::size_t k, std::size_t n);

/// p' = m00 p + m01 q ; q' = m10 p + m11 q, elementwise over n entries.
using RotateFn = void (*)(Complex* p, Complex* q, std::size_t n, Complex m00, Complex m01,
                          Complex m10, Complex m11);

/// sum |x_i|^2
using NormSqFn = double (*)(const Complex* x, std::size_t n);

/// <x|y> = sum conj(x_i) y_i
using DotcFn = Complex (*)(const Complex* x, const Complex* y, std::size_t n);

struct KernelTable {
  Backend backend;
  GemmFn gemm;
  RotateFn rotate;
  NormSqFn norm_sq;
  DotcFn dotc;
};

const KernelTable& scalar_table();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();

bool cpu_has_avx2();

/// Currently active table.
const KernelTable& active();
/// Override the active backend (tests, benchmarking). Falls back to scalar if unavailable.
void select(Backend b);
std::string_view name(Backend b);

inline void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
                 std::size_t n) {
  active().gemm(a, b, c, m, k, n);
}
inline void rotate(Complex* p, Complex* q, std::size_t n, Complex m00, Complex m01, Complex m10,
                   Complex m11) {
  active().rotate(p, q, n, m00, m01, m10, m11);
}
inline double norm_sq(const Complex* x, std::size_t n) { return active().norm_sq(x, n); }
inline Complex dotc(const Complex* x, const Complex* y, std::size_t n) {
  return active().dotc(x, y, n);
}

}  // namespace entanglia::kernels
