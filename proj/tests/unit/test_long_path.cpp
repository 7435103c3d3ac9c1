#include <set>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "flm/long_path.hpp"

using namespace flm;

namespace {

// Independent check of the defining properties directly on the point list.
bool defining_properties_hold(const LongKPath& path) {
  const auto& pts = path.points();
  const std::size_t k = path.k();
  std::set<std::string> seen;
  for (const auto& x : pts) seen.insert(x.to_string());
  if (seen.size() != pts.size()) return false;
  if (pts.front().count_ones() != 0) return false;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      std::size_t d = 0;
      for (std::size_t i = 0; i < path.n(); ++i) d += pts[a][i] != pts[b][i];
      const std::size_t off = b - a;
      if (off < k ? d != off : d < k) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("lengths follow k 2^(n/k) - k + 1") {
  CHECK(long_path_length(8, 2) == 31u);
  CHECK(long_path_length(4, 2) == 7u);
  CHECK(long_path_length(12, 4) == 29u);
  CHECK(long_path_length(6, 3) == 10u);
  CHECK(!long_path_length(640, 2).has_value());
}

TEST_CASE("smallest path by hand: n=2, k=2") {
  const LongKPath p(2, 2);
  REQUIRE(p.points().size() == 3);
  CHECK(p[0].to_string() == "00");
  CHECK(p[1].hamming_distance(p[0]) == 1);
  CHECK(p[2].to_string() == "11");
}

TEST_CASE("defining properties hold exhaustively") {
  const std::pair<std::size_t, std::size_t> cases[] = {{4, 2}, {6, 2}, {6, 3}, {8, 2}, {8, 4}, {9, 3}, {12, 4}, {10, 2}};
  for (auto [n, k] : cases) {
    CAPTURE(n);
    CAPTURE(k);
    const LongKPath path(n, k);
    CHECK(path.points().size() == *long_path_length(n, k));
    CHECK(path.m() == path.points().size() - 1);
    CHECK(defining_properties_hold(path));
    const auto chk = verify_long_path(path);
    CHECK(chk.ok());
    CHECK(chk.exhaustive);
  }
}

TEST_CASE("index_of maps points back and rejects everything else") {
  const LongKPath path(8, 2);
  std::set<std::string> on_path;
  for (std::size_t i = 0; i < path.points().size(); ++i) {
    CHECK(path.index_of(path[i]) == i);
    on_path.insert(path[i].to_string());
  }
  for (std::uint64_t m = 0; m < 256; ++m) {
    const auto x = BitString::from_mask(m, 8);
    CHECK(path.index_of(x).has_value() == (on_path.count(x.to_string()) > 0));
  }
}

TEST_CASE("large path falls back to near-offset checks") {
  const LongKPath path(30, 2);  // 65535 points
  const auto chk = verify_long_path(path, 1000);
  CHECK(!chk.exhaustive);
  CHECK(chk.ok());
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(LongKPath(6, 1), std::invalid_argument);
  CHECK_THROWS_AS(LongKPath(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(LongKPath(60, 2, 1000), std::invalid_argument);
}
