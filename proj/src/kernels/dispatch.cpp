#include <cstdlib>
#include <cstring>

#include "hardy/kernels.hpp"

namespace hardy::kernels {

#if defined(HARDY_HAVE_AVX2)
const KernelTable& avx2_table_impl();
#endif

namespace {

bool CpuHasAvx2() {
#if defined(HARDY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& Select() {
  const char* forced = std::getenv("HARDY_KERNELS");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(HARDY_HAVE_AVX2)
  static const bool supported = CpuHasAvx2();
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = Select();
  return chosen;
}

}  // namespace hardy::kernels
