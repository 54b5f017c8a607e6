#include <cstdlib>
#include <string_view>

#include "charter/simd/kernels.hpp"

namespace charter::simd {

#ifndef CHARTER_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(CHARTER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& kernels() {
  static const KernelTable& selected = [] () -> const KernelTable& {
    const char* forced = std::getenv("CHARTER_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels(); avx2 != nullptr && cpu_has_avx2()) return *avx2;
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace charter::simd
