#pragma once

// Data-parallel inner loops shared by the exact oracles and the EA engine.
//
// Every kernel has a portable scalar reference implementation. Vector
// variants (AVX2 on x86-64, NEON on AArch64) are selected once at runtime
// and must agree with the reference: bit-exact for integer kernels, within
// a few ulps times the length for floating point reductions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace flm::simd {

struct KernelSet {
  std::string_view name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // sum_j weights[popcount(state ^ codes[j])] * values[j]
  // `weights` must hold at least (max popcount + 1) entries.
  double (*hamming_weighted_sum)(std::uint32_t state, const std::uint32_t* codes,
                                 const double* values, std::size_t count,
                                 const double* weights);

  // total number of set bits
  std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t count);
};

const KernelSet& scalar_kernels();

// Kernel sets usable on this CPU, scalar first.
std::vector<const KernelSet*> available_kernels();

// Best available set. FLM_SIMD=scalar in the environment forces the reference.
const KernelSet& active_kernels();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline std::uint64_t popcount(std::span<const std::uint64_t> words) {
  return active_kernels().popcount(words.data(), words.size());
}

}  // namespace flm::simd
