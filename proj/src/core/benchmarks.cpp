#include "flm/benchmarks.hpp"

#include <stdexcept>

namespace flm {

std::int64_t onemax(const BitString& x) { return static_cast<std::int64_t>(x.count_ones()); }

std::int64_t leadingones(const BitString& x) {
  return static_cast<std::int64_t>(x.leading_ones());
}

std::int64_t jump_fitness(const BitString& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k > n) throw std::invalid_argument("jump size must satisfy 1 <= k <= n");
  const std::size_t ones = x.count_ones();
  if (ones <= n - k || ones == n) return static_cast<std::int64_t>(ones + k);
  return static_cast<std::int64_t>(n - ones);
}

std::int64_t long_path_fitness(const LongKPath& path, const BitString& x) {
  const auto idx = path.index_of(x);
  return idx ? static_cast<std::int64_t>(*idx) : -1;
}

std::string_view to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::onemax: return "onemax";
    case BenchmarkKind::leadingones: return "leadingones";
    case BenchmarkKind::jump: return "jump";
    case BenchmarkKind::longpath: return "longpath";
  }
  return "unknown";
}

BenchmarkKind parse_benchmark_kind(std::string_view name) {
  if (name == "onemax") return BenchmarkKind::onemax;
  if (name == "leadingones") return BenchmarkKind::leadingones;
  if (name == "jump") return BenchmarkKind::jump;
  if (name == "longpath") return BenchmarkKind::longpath;
  throw std::invalid_argument("unknown benchmark kind '" + std::string(name) + "'");
}

std::string Benchmark::describe() const {
  std::string s(to_string(kind()));
  s += "(n=" + std::to_string(n_);
  if (kind() == BenchmarkKind::jump || kind() == BenchmarkKind::longpath) {
    s += ", k=" + std::to_string(k_);
  }
  return s + ")";
}

OneMaxBenchmark::OneMaxBenchmark(std::size_t n) : Benchmark(n, 0) {
  if (n < 1) throw std::invalid_argument("onemax requires n >= 1");
}

LeadingOnesBenchmark::LeadingOnesBenchmark(std::size_t n) : Benchmark(n, 0) {
  if (n < 1) throw std::invalid_argument("leadingones requires n >= 1");
}

JumpBenchmark::JumpBenchmark(std::size_t n, std::size_t k) : Benchmark(n, k) {
  if (k < 1 || k > n) throw std::invalid_argument("jump requires 1 <= k <= n");
}

std::size_t JumpBenchmark::level(const BitString& x) const {
  const std::size_t ones = x.count_ones();
  if (ones == n()) return k() + 1;
  if (ones <= n() - k()) return k();
  return n() - ones;
}

LongPathBenchmark::LongPathBenchmark(std::size_t n, std::size_t k, std::size_t point_cap)
    : Benchmark(n, k), path_(n, k, point_cap) {}

std::size_t LongPathBenchmark::level(const BitString& x) const {
  return path_.index_of(x).value_or(0);
}

std::shared_ptr<const Benchmark> make_benchmark(BenchmarkKind kind, std::size_t n,
                                                std::size_t k) {
  switch (kind) {
    case BenchmarkKind::onemax: return std::make_shared<OneMaxBenchmark>(n);
    case BenchmarkKind::leadingones: return std::make_shared<LeadingOnesBenchmark>(n);
    case BenchmarkKind::jump: return std::make_shared<JumpBenchmark>(n, k);
    case BenchmarkKind::longpath: return std::make_shared<LongPathBenchmark>(n, k);
  }
  throw std::invalid_argument("unknown benchmark kind");
}

LevelFunction canonical_levels(std::shared_ptr<const Benchmark> benchmark) {
  const std::size_t count = benchmark->level_count();
  return {[b = std::move(benchmark)](const BitString& x) { return b->level(x); }, count};
}

LevelFunction canonical_levels(BenchmarkKind kind, std::size_t n, std::size_t k) {
  return canonical_levels(make_benchmark(kind, n, k));
}

}  // namespace flm
