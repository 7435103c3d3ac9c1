#include <stdexcept>

#include "doctest.h"
#include "flm/benchmarks.hpp"

using namespace flm;

TEST_CASE("OneMax and LeadingOnes hand values") {
  const auto x = BitString::from_string("1101000");
  CHECK(onemax(x) == 3);
  CHECK(leadingones(x) == 2);
  CHECK(leadingones(BitString::from_string("0111")) == 0);
  CHECK(leadingones(BitString::from_string("1111")) == 4);
}

TEST_CASE("Jump hand values, n=5 k=2") {
  // |x| <= n-k or |x| = n: k + |x|; otherwise n - |x|
  CHECK(jump_fitness(BitString::from_string("00000"), 2) == 2);
  CHECK(jump_fitness(BitString::from_string("11100"), 2) == 5);
  CHECK(jump_fitness(BitString::from_string("11110"), 2) == 1);
  CHECK(jump_fitness(BitString::from_string("11111"), 2) == 7);
  CHECK_THROWS_AS(jump_fitness(BitString::from_string("11111"), 0), std::invalid_argument);
  CHECK_THROWS_AS(jump_fitness(BitString::from_string("11111"), 6), std::invalid_argument);
}

TEST_CASE("Jump levels: gap by fitness, N, optimum; level 0 empty") {
  JumpBenchmark jb(8, 3);
  CHECK(jb.level_count() == 5);
  CHECK(jb.level(BitString::from_string("11111110")) == 1);  // fitness 1
  CHECK(jb.level(BitString::from_string("11111100")) == 2);  // fitness 2
  CHECK(jb.level(BitString::from_string("11111000")) == 3);  // in N
  CHECK(jb.level(BitString::from_string("00000000")) == 3);
  CHECK(jb.level(BitString::from_string("11111111")) == 4);
  for (std::uint64_t m = 0; m < 256; ++m) CHECK(jb.level(BitString::from_mask(m, 8)) != 0);
}

TEST_CASE("names round trip") {
  for (auto k : {BenchmarkKind::onemax, BenchmarkKind::leadingones, BenchmarkKind::jump,
                 BenchmarkKind::longpath}) {
    CHECK(parse_benchmark_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_benchmark_kind("trap"), std::invalid_argument);
}

TEST_CASE("property: canonical levels form a fitness-based partition") {
  struct Case {
    BenchmarkKind kind;
    std::size_t n, k;
  };
  for (const Case c : {Case{BenchmarkKind::onemax, 8, 0}, Case{BenchmarkKind::leadingones, 8, 0},
                       Case{BenchmarkKind::jump, 8, 2}, Case{BenchmarkKind::jump, 8, 4},
                       Case{BenchmarkKind::longpath, 8, 2}, Case{BenchmarkKind::longpath, 9, 3}}) {
    const auto b = make_benchmark(c.kind, c.n, c.k);
    CAPTURE(b->describe());
    const std::size_t N = std::size_t{1} << c.n;
    std::vector<std::int64_t> f(N);
    std::vector<std::size_t> lvl(N);
    for (std::size_t m = 0; m < N; ++m) {
      const auto x = BitString::from_mask(m, c.n);
      f[m] = b->fitness(x);
      lvl[m] = b->level(x);
      CHECK(lvl[m] < b->level_count());
      CHECK((lvl[m] == b->level_count() - 1) == b->is_optimum(x));
    }
    bool ordered = true;
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t z = 0; z < N; ++z) {
        if (f[a] < f[z] && lvl[a] > lvl[z]) ordered = false;
      }
    }
    CHECK(ordered);
  }
}

TEST_CASE("long path fitness is the path index, -1 off the path") {
  LongPathBenchmark lp(6, 2);
  const auto& pts = lp.path().points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(lp.fitness(pts[i]) == static_cast<std::int64_t>(i));
    CHECK(lp.level(pts[i]) == i);
  }
  std::size_t off = 0;
  for (std::uint64_t m = 0; m < 64; ++m) {
    const auto x = BitString::from_mask(m, 6);
    if (!lp.path().index_of(x)) {
      ++off;
      CHECK(lp.fitness(x) == -1);
      CHECK(lp.level(x) == 0);
    }
  }
  CHECK(off == 64 - pts.size());
  CHECK(lp.is_optimum(pts.back()));
}

TEST_CASE("factory validates parameters") {
  CHECK_THROWS(make_benchmark(BenchmarkKind::jump, 5, 0));
  CHECK_THROWS(make_benchmark(BenchmarkKind::longpath, 7, 2));
  CHECK(make_benchmark(BenchmarkKind::onemax, 5)->level_count() == 6);
}
