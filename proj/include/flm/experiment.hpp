#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flm/benchmarks.hpp"
#include "flm/bitstring.hpp"
#include "flm/ea.hpp"

namespace flm {

// A literal rate ("0.01", "1/12") or a multiple of 1/n ("1/n", "3/2/n",
// "0.5/n"), resolved once n is known.
struct MutationRate {
  double value = 1.0;
  bool per_n = true;

  // Throws std::invalid_argument on malformed input.
  static MutationRate parse(std::string_view text);
  // Throws std::invalid_argument unless the result lies in (0, 1).
  double resolve(std::size_t n) const;
  std::string to_string() const;
};

// random: uniform bits. zero: all-zero string. ones:K: the first K bits set.
// bits:S: the given string.
struct InitMode {
  enum class Kind { random, zero, ones, bits };
  Kind kind = Kind::random;
  std::size_t ones = 0;
  std::string bits;

  static InitMode parse(std::string_view text);
  std::string to_string() const;
  bool is_random() const { return kind == Kind::random; }
  // Throws std::invalid_argument when the point does not fit n.
  BitString point(std::size_t n) const;
};

struct ExperimentConfig {
  BenchmarkKind benchmark = BenchmarkKind::onemax;
  std::size_t n = 0;
  std::size_t k = 0;
  MutationRate rate;
  std::uint64_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::optional<InitMode> init;  // random, except zero for longpath
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::size_t threads = 1;

  InitMode effective_init() const;
  double mutation_rate() const { return rate.resolve(n); }
  // Throws std::invalid_argument.
  void validate() const;
  std::shared_ptr<const Benchmark> make() const;
};

struct ReplicateRecord {
  std::uint64_t replicate = 0;
  std::uint64_t runtime = 0;
  bool hit_optimum = false;
};

struct LevelStatistics {
  std::size_t level = 0;
  std::uint64_t visits = 0;      // replicates that ever occupied the level
  std::uint64_t leaves = 0;      // completed sojourns
  std::uint64_t iterations = 0;  // iterations spent on the level
  double visit_freq = 0.0;
  double visit_se = 0.0;
  double leave_rate = 0.0;    // leaves / iterations; NaN when never occupied for an iteration
  double mean_sojourn = 0.0;  // iterations / visits; NaN when never visited
};

struct RunStatistics {
  std::uint64_t replicates = 0;
  std::uint64_t timeouts = 0;
  double mean = 0.0;
  double variance = 0.0;  // sample variance; 0 for a single replicate
  double se = 0.0;
  double ci_low = 0.0;  // normal-approximation 99% interval
  double ci_high = 0.0;
  std::vector<ReplicateRecord> runs;  // replicate-index order
  std::vector<LevelStatistics> levels;
};

inline constexpr double kZ99 = 2.5758293035489004;

// Runs config.replicates independent replicates on up to config.threads
// threads. Replicate r draws from replicate_stream(master_seed, r); results
// are merged in index order, so the statistics do not depend on the thread
// count.
RunStatistics run_experiment(const ExperimentConfig& config);

// Fills every field of `stats` from per-replicate results (index order).
void aggregate(RunStatistics& stats, const std::vector<RunResult>& results, std::size_t level_count);

}  // namespace flm
