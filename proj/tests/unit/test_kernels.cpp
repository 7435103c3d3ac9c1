#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "flm/simd/kernels.hpp"

using flm::simd::KernelSet;

namespace {

std::vector<double> random_doubles(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Lengths around every vector width and unroll boundary.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 1023};

}  // namespace

TEST_CASE("scalar set is listed first and active set is available") {
  const auto sets = flm::simd::available_kernels();
  REQUIRE(!sets.empty());
  CHECK(sets.front() == &flm::simd::scalar_kernels());
  bool found = false;
  for (const auto* s : sets) found = found || s == &flm::simd::active_kernels();
  CHECK(found);
}

TEST_CASE("scalar kernels on hand values") {
  const KernelSet& k = flm::simd::scalar_kernels();
  const double a[] = {1, 2, 3};
  const double b[] = {4, 5, 6};
  CHECK(k.dot(a, b, 3) == 32.0);
  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);
  const std::uint64_t w[] = {0xFFull, 0x1ull, ~0ull};
  CHECK(k.popcount(w, 3) == 8 + 1 + 64);
  const std::uint32_t codes[] = {0b000, 0b001, 0b011, 0b111};
  const double values[] = {1, 10, 100, 1000};
  const double weights[] = {1, 2, 3, 4};
  // distances from 0b001: 1, 0, 1, 2
  CHECK(k.hamming_weighted_sum(0b001, codes, values, 4, weights) == 2 + 10 + 200 + 3000);
}

TEST_CASE("every vector set matches the scalar reference") {
  const KernelSet& ref = flm::simd::scalar_kernels();
  std::mt19937_64 rng(7);
  for (const KernelSet* ks : flm::simd::available_kernels()) {
    CAPTURE(ks->name);
    for (std::size_t n : kLengths) {
      CAPTURE(n);
      const auto a = random_doubles(n, rng);
      const auto b = random_doubles(n, rng);
      const double want = ref.dot(a.data(), b.data(), n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
      CHECK(std::abs(ks->dot(a.data(), b.data(), n) - want) <= 4e-16 * (mag + 1.0) * static_cast<double>(n + 1));

      auto y1 = random_doubles(n, rng);
      auto y2 = y1;
      ref.axpy(0.37, a.data(), y1.data(), n);
      ks->axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

      std::vector<std::uint64_t> words(n);
      for (auto& w : words) w = rng();
      CHECK(ks->popcount(words.data(), n) == ref.popcount(words.data(), n));

      std::vector<std::uint32_t> codes(n);
      for (auto& c : codes) c = static_cast<std::uint32_t>(rng() & 0x3FFF);
      std::vector<double> weights(15);
      for (std::size_t d = 0; d < weights.size(); ++d) weights[d] = std::ldexp(1.0, -static_cast<int>(d));
      const std::uint32_t state = static_cast<std::uint32_t>(rng() & 0x3FFF);
      const double h_ref = ref.hamming_weighted_sum(state, codes.data(), a.data(), n, weights.data());
      const double h = ks->hamming_weighted_sum(state, codes.data(), a.data(), n, weights.data());
      CHECK(std::abs(h - h_ref) <= 1e-15 * static_cast<double>(n + 1));
    }
  }
}

TEST_CASE("kernels handle unaligned starts") {
  const KernelSet& ref = flm::simd::scalar_kernels();
  std::mt19937_64 rng(11);
  const auto a = random_doubles(70, rng);
  const auto b = random_doubles(70, rng);
  for (const KernelSet* ks : flm::simd::available_kernels()) {
    for (std::size_t off = 0; off < 4; ++off) {
      const double want = ref.dot(a.data() + off, b.data() + off, 61);
      CHECK(ks->dot(a.data() + off, b.data() + off, 61) == doctest::Approx(want).epsilon(1e-13));
    }
  }
}
