#include <atomic>
#include <cstdlib>
#include <string_view>

#include "entanglia/kernels.hpp"

namespace entanglia::kernels {

#ifndef ENTANGLIA_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has;
#else
  return false;
#endif
}

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("ENTANGLIA_KERNELS");
      env != nullptr && std::string_view(env) == "scalar") {
    return &scalar_table();
  }
  if (cpu_has_avx2() && avx2_table() != nullptr) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{detect()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void select(Backend b) {
  if (b == Backend::avx2 && cpu_has_avx2() && avx2_table() != nullptr) {
    slot().store(avx2_table());
  } else {
    slot().store(&scalar_table());
  }
}

std::string_view name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace entanglia::kernels
