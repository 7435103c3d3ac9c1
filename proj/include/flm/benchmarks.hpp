#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "flm/bitstring.hpp"
#include "flm/long_path.hpp"

namespace flm {

std::int64_t onemax(const BitString& x);
std::int64_t leadingones(const BitString& x);
// Throws std::invalid_argument unless 1 <= k <= n.
std::int64_t jump_fitness(const BitString& x, std::size_t k);
// Path index when x is on the path, -1 otherwise.
std::int64_t long_path_fitness(const LongKPath& path, const BitString& x);

enum class BenchmarkKind { onemax, leadingones, jump, longpath };

std::string_view to_string(BenchmarkKind kind);
// Throws std::invalid_argument on unknown names.
BenchmarkKind parse_benchmark_kind(std::string_view name);

// A pseudo-Boolean benchmark together with its canonical fitness-based level
// partition. Levels are numbered 0..level_count()-1 and only the optimum
// occupies the top level. Implementations are immutable.
class Benchmark {
 public:
  virtual ~Benchmark() = default;

  virtual BenchmarkKind kind() const = 0;
  std::size_t n() const { return n_; }
  // Jump size or path parameter; 0 when unused.
  std::size_t k() const { return k_; }

  virtual std::int64_t fitness(const BitString& x) const = 0;
  virtual bool is_optimum(const BitString& x) const = 0;
  virtual std::size_t level(const BitString& x) const = 0;
  virtual std::size_t level_count() const = 0;

  // Search point the run starts from when no random initialization is used.
  virtual BitString default_start() const { return BitString(n_); }
  std::string describe() const;

 protected:
  Benchmark(std::size_t n, std::size_t k) : n_(n), k_(k) {}

 private:
  std::size_t n_;
  std::size_t k_;
};

class OneMaxBenchmark final : public Benchmark {
 public:
  explicit OneMaxBenchmark(std::size_t n);
  BenchmarkKind kind() const override { return BenchmarkKind::onemax; }
  std::int64_t fitness(const BitString& x) const override { return onemax(x); }
  bool is_optimum(const BitString& x) const override { return x.count_ones() == n(); }
  std::size_t level(const BitString& x) const override { return x.count_ones(); }
  std::size_t level_count() const override { return n() + 1; }
};

class LeadingOnesBenchmark final : public Benchmark {
 public:
  explicit LeadingOnesBenchmark(std::size_t n);
  BenchmarkKind kind() const override { return BenchmarkKind::leadingones; }
  std::int64_t fitness(const BitString& x) const override { return leadingones(x); }
  bool is_optimum(const BitString& x) const override { return x.leading_ones() == n(); }
  std::size_t level(const BitString& x) const override { return x.leading_ones(); }
  std::size_t level_count() const override { return n() + 1; }
};

// Levels: j in [1..k-1] for gap points of fitness j, k for all non-optimal
// points outside the gap, k+1 for the optimum. Level 0 is empty.
class JumpBenchmark final : public Benchmark {
 public:
  JumpBenchmark(std::size_t n, std::size_t k);
  BenchmarkKind kind() const override { return BenchmarkKind::jump; }
  std::int64_t fitness(const BitString& x) const override { return jump_fitness(x, k()); }
  bool is_optimum(const BitString& x) const override { return x.count_ones() == n(); }
  std::size_t level(const BitString& x) const override;
  std::size_t level_count() const override { return k() + 2; }
};

// Levels: path index for on-path points; off-path points share level 0 with
// the all-zero start.
class LongPathBenchmark final : public Benchmark {
 public:
  LongPathBenchmark(std::size_t n, std::size_t k, std::size_t point_cap = kDefaultPathPointCap);
  BenchmarkKind kind() const override { return BenchmarkKind::longpath; }
  std::int64_t fitness(const BitString& x) const override { return long_path_fitness(path_, x); }
  bool is_optimum(const BitString& x) const override { return x == path_.points().back(); }
  std::size_t level(const BitString& x) const override;
  std::size_t level_count() const override { return path_.points().size(); }
  const LongKPath& path() const { return path_; }

 private:
  LongKPath path_;
};

// k is the jump size for jump, the block size for longpath, ignored otherwise.
std::shared_ptr<const Benchmark> make_benchmark(BenchmarkKind kind, std::size_t n,
                                                std::size_t k = 0);

struct LevelFunction {
  std::function<std::size_t(const BitString&)> level;
  std::size_t count = 0;  // number of levels, top level is count - 1
};

LevelFunction canonical_levels(std::shared_ptr<const Benchmark> benchmark);
LevelFunction canonical_levels(BenchmarkKind kind, std::size_t n, std::size_t k = 0);

}  // namespace flm
