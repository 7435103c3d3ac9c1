#include "flm/simd/kernels.hpp"

#include <bit>

namespace flm::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double hamming_weighted_sum_scalar(std::uint32_t state, const std::uint32_t* codes,
                                   const double* values, std::size_t count,
                                   const double* weights) {
  double s = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    s += weights[std::popcount(state ^ codes[j])] * values[j];
  }
  return s;
}

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t count) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(words[i]);
  return total;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", dot_scalar, axpy_scalar,
                             hamming_weighted_sum_scalar, popcount_scalar};
  return set;
}

}  // namespace flm::simd
