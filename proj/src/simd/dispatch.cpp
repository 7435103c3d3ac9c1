#include "flm/simd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace flm::simd {

#if defined(FLM_HAVE_AVX2_TU)
const KernelSet& avx2_kernels();
#endif
#if defined(FLM_HAVE_NEON_TU)
const KernelSet& neon_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(FLM_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
         __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelSet& select() {
  if (const char* env = std::getenv("FLM_SIMD"); env && std::string_view(env) == "scalar") {
    return scalar_kernels();
  }
  auto sets = available_kernels();
  return *sets.back();
}

}  // namespace

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> sets{&scalar_kernels()};
#if defined(FLM_HAVE_AVX2_TU)
  if (cpu_has_avx2()) sets.push_back(&avx2_kernels());
#endif
#if defined(FLM_HAVE_NEON_TU)
  sets.push_back(&neon_kernels());
#endif
  return sets;
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = select();
  return chosen;
}

}  // namespace flm::simd
