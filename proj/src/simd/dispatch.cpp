#include <cstdlib>
#include <string_view>

#include "symdec/simd/kernels.hpp"

namespace symdec::simd {

const KernelTable* avx2_kernels() {
#if defined(SYMDEC_HAS_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() {
  static const KernelTable& selected = [] () -> const KernelTable& {
    const char* env = std::getenv("SYMDEC_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace symdec::simd
