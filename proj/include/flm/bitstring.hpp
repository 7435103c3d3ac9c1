#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flm {

// Fixed-length bit vector, packed into 64-bit words. Position 0 is the first
// (leftmost) character of the textual form "0110...". Bits past `size()` in
// the last word are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false);

  // Parses a string of '0'/'1' characters; throws std::invalid_argument.
  static BitString from_string(std::string_view text);
  // Low `n` bits of `mask`, bit i of the mask becoming position i.
  static BitString from_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count_ones() const;
  // Length of the all-ones prefix.
  std::size_t leading_ones() const;
  std::size_t hamming_distance(const BitString& other) const;

  // Only valid for size() <= 64.
  std::uint64_t to_mask() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& x) const noexcept;
};

}  // namespace flm
