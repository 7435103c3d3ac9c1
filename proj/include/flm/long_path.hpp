#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "flm/bitstring.hpp"

namespace flm {

inline constexpr std::size_t kDefaultPathPointCap = 1'000'000;

// k * 2^(n/k) - k + 1, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> long_path_length(std::size_t n, std::size_t k);

// Long k-path over {0,1}^n: an ordered point list starting at 0^n where the
// point i steps ahead is at Hamming distance exactly i for i < k and at
// least k otherwise. Immutable after construction.
class LongKPath {
 public:
  // Throws std::invalid_argument when k < 2, k does not divide n, or the
  // path would exceed `point_cap` points.
  LongKPath(std::size_t n, std::size_t k, std::size_t point_cap = kDefaultPathPointCap);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  // Number of positive-fitness points (the path has m() + 1 points).
  std::size_t m() const { return points_.size() - 1; }
  const std::vector<BitString>& points() const { return points_; }
  const BitString& operator[](std::size_t i) const { return points_[i]; }

  std::optional<std::size_t> index_of(const BitString& x) const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<BitString> points_;
  std::unordered_map<BitString, std::size_t, BitStringHash> index_;
};

struct PathCheck {
  bool starts_at_zero = false;
  bool length_matches = false;
  bool near_distances_exact = false;  // offsets i < k
  bool far_distances_at_least_k = false;  // offsets i >= k
  bool exhaustive = false;  // all pairs examined
  std::size_t pairs_checked = 0;

  bool ok() const {
    return starts_at_zero && length_matches && near_distances_exact && far_distances_at_least_k;
  }
};

// Checks the path's defining distance properties. All point pairs are
// examined when the path has at most `exhaustive_cap` points; otherwise the
// far-offset property is only checked for offsets below 4k.
PathCheck verify_long_path(const LongKPath& path, std::size_t exhaustive_cap = 20'000);

}  // namespace flm
