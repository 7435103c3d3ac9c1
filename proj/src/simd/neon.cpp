// AArch64 only. NEON is part of the base ISA there, so no runtime probe.

#include "flm/simd/kernels.hpp"

#include <arm_neon.h>

#include <bit>

namespace flm::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double hamming_weighted_sum_neon(std::uint32_t state, const std::uint32_t* codes,
                                 const double* values, std::size_t count,
                                 const double* weights) {
  const uint32x4_t vstate = vdupq_n_u32(state);
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    uint32x4_t x = veorq_u32(vld1q_u32(codes + j), vstate);
    uint8x16_t c8 = vcntq_u8(vreinterpretq_u8_u32(x));
    uint32x4_t d = vpaddlq_u16(vpaddlq_u8(c8));
    // NEON has no gather; the lookup stays scalar, the accumulation vector.
    double w[4] = {weights[vgetq_lane_u32(d, 0)], weights[vgetq_lane_u32(d, 1)],
                   weights[vgetq_lane_u32(d, 2)], weights[vgetq_lane_u32(d, 3)]};
    acc0 = vfmaq_f64(acc0, vld1q_f64(w), vld1q_f64(values + j));
    acc1 = vfmaq_f64(acc1, vld1q_f64(w + 2), vld1q_f64(values + j + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; j < count; ++j) s += weights[std::popcount(state ^ codes[j])] * values[j];
  return s;
}

std::uint64_t popcount_neon(const std::uint64_t* words, std::size_t count) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    uint8x16_t c8 = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(words + i)));
    acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(c8))));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < count; ++i) total += std::popcount(words[i]);
  return total;
}

}  // namespace

const KernelSet& neon_kernels() {
  static const KernelSet set{"neon", dot_neon, axpy_neon, hamming_weighted_sum_neon,
                             popcount_neon};
  return set;
}

}  // namespace flm::simd
