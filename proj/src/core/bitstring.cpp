#include "flm/bitstring.hpp"

#include <bit>
#include <stdexcept>

#include "flm/simd/kernels.hpp"

namespace flm {

BitString::BitString(std::size_t n, bool value) : n_(n), words_((n + 63) / 64, 0) {
  if (value) {
    for (auto& w : words_) w = ~std::uint64_t{0};
    if (n_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
}

BitString BitString::from_string(std::string_view text) {
  BitString x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x.flip(i);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return x;
}

BitString BitString::from_mask(std::uint64_t mask, std::size_t n) {
  if (n > 64) throw std::invalid_argument("from_mask supports at most 64 bits");
  BitString x(n);
  if (n > 0) x.words_[0] = n == 64 ? mask : mask & ((std::uint64_t{1} << n) - 1);
  return x;
}

void BitString::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t BitString::count_ones() const {
  if (words_.size() < 8) {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  return static_cast<std::size_t>(simd::popcount(words_));
}

std::size_t BitString::leading_ones() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t inverted = ~words_[w];
    if (inverted != 0) {
      const std::size_t pos = w * 64 + static_cast<std::size_t>(std::countr_zero(inverted));
      return pos < n_ ? pos : n_;
    }
  }
  return n_;
}

std::size_t BitString::hamming_distance(const BitString& other) const {
  if (other.n_ != n_) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) d += std::popcount(words_[w] ^ other.words_[w]);
  return d;
}

std::uint64_t BitString::to_mask() const {
  if (n_ > 64) throw std::logic_error("to_mask supports at most 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::size_t BitStringHash::operator()(const BitString& x) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ x.size();
  for (std::uint64_t w : x.words()) {
    h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

}  // namespace flm
