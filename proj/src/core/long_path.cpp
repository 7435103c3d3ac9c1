#include "flm/long_path.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace flm {

std::optional<std::uint64_t> long_path_length(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) return std::nullopt;
  const std::size_t blocks = n / k;
  if (blocks >= 58) return std::nullopt;
  const std::uint64_t pow = std::uint64_t{1} << blocks;
  if (pow > (UINT64_MAX - 1) / k) return std::nullopt;
  return static_cast<std::uint64_t>(k) * pow - k + 1;
}

namespace {

// Points of the dimension-`dim` path as masks over the last `dim` positions of
// an n-bit string; position (n - dim + t) holds bit t of the sub-path. The
// recursion prepends k-bit blocks, so block b occupies positions
// [n - dim, n - dim + k) when the path has dimension dim.
std::vector<BitString> build_points(std::size_t n, std::size_t k) {
  // Base path on the last k positions: 0^k, 0^(k-1)1, ..., 1^k.
  std::vector<BitString> path;
  path.reserve(k + 1);
  BitString p(n);
  path.push_back(p);
  for (std::size_t j = 1; j <= k; ++j) {
    p.set(n - j, true);
    path.push_back(p);
  }

  for (std::size_t dim = 2 * k; dim <= n; dim += k) {
    const std::size_t block = n - dim;  // first position of the new prefix block
    const std::size_t old = path.size();
    std::vector<BitString> next;
    next.reserve(2 * old + k - 1);
    // 0^k prefix: existing points unchanged.
    next.insert(next.end(), path.begin(), path.end());
    // Bridge: prefixes 0^(k-1)1, 0^(k-2)11, ..., 01^(k-1) on the last point.
    BitString bridge = path.back();
    for (std::size_t j = 1; j < k; ++j) {
      bridge.set(block + k - j, true);
      next.push_back(bridge);
    }
    // 1^k prefix on the reversed sub-path.
    for (std::size_t i = old; i-- > 0;) {
      BitString q = path[i];
      for (std::size_t t = 0; t < k; ++t) q.set(block + t, true);
      next.push_back(std::move(q));
    }
    path = std::move(next);
  }
  return path;
}

}  // namespace

LongKPath::LongKPath(std::size_t n, std::size_t k, std::size_t point_cap) : n_(n), k_(k) {
  if (k < 2) throw std::invalid_argument("long k-path requires k >= 2");
  if (n % k != 0) throw std::invalid_argument("long k-path requires k to divide n");
  const auto length = long_path_length(n, k);
  if (!length || *length > point_cap) {
    throw std::invalid_argument("long k-path with n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + " exceeds the cap of " +
                                std::to_string(point_cap) + " points");
  }
  points_ = build_points(n, k);
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
}

std::optional<std::size_t> LongKPath::index_of(const BitString& x) const {
  if (x.size() != n_) return std::nullopt;
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PathCheck verify_long_path(const LongKPath& path, std::size_t exhaustive_cap) {
  PathCheck check;
  const auto& pts = path.points();
  const std::size_t k = path.k();
  check.starts_at_zero = !pts.empty() && pts.front().count_ones() == 0;
  const auto expected = long_path_length(path.n(), k);
  check.length_matches = expected && *expected == pts.size();
  check.exhaustive = pts.size() <= exhaustive_cap;
  check.near_distances_exact = true;
  check.far_distances_at_least_k = true;

  const std::size_t max_offset = check.exhaustive ? pts.size() : 4 * k;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    const std::size_t end = std::min(pts.size(), a + max_offset);
    for (std::size_t b = a + 1; b < end; ++b) {
      const std::size_t offset = b - a;
      const std::size_t d = pts[a].hamming_distance(pts[b]);
      ++check.pairs_checked;
      if (offset < k) {
        if (d != offset) check.near_distances_exact = false;
      } else if (d < k) {
        check.far_distances_at_least_k = false;
      }
    }
  }
  return check;
}

}  // namespace flm
