#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flm/benchmarks.hpp"
#include "flm/bitstring.hpp"
#include "flm/rng.hpp"

namespace flm {

inline constexpr std::uint64_t kDefaultMaxIterations = 1'000'000'000;

struct EaConfig {
  std::size_t n = 0;
  double mutation_rate = 0.0;  // in (0, 1)
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument.
  void validate() const;
};

struct LevelVisit {
  std::size_t level = 0;
  std::uint64_t iterations = 0;  // sojourn length; 0 for the level a run ends on

  friend bool operator==(const LevelVisit&, const LevelVisit&) = default;
};

struct RunResult {
  std::uint64_t runtime = 0;
  std::vector<LevelVisit> level_trace;
  bool hit_optimum = false;

  std::string serialize() const;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// Each bit independently 1 with probability 1/2. Throws for n == 0.
BitString uniform_random_bitstring(std::size_t n, Rng& rng);

// Copy of x with every bit flipped independently with probability p.
// Throws for p outside [0, 1].
BitString standard_bit_mutation(const BitString& x, double p, Rng& rng);

// Draws the set of flipped positions of one standard bit mutation: the count
// from Binomial(n, p), then a uniform subset of that size (Floyd's method).
class FlipSampler {
 public:
  FlipSampler(std::size_t n, double p);
  const std::vector<std::size_t>& sample(Rng& rng);

 private:
  std::size_t n_;
  double p_;
  std::binomial_distribution<std::size_t> count_;
  std::vector<std::size_t> positions_;
  std::vector<bool> chosen_;
};

struct RunOptions {
  std::optional<BitString> initial;  // uniform random when empty
  std::optional<LevelFunction> levels;  // records level_trace when set
  // Called after every iteration with (iteration, current fitness).
  std::function<void(std::uint64_t, std::int64_t)> fitness_observer;
};

// The (1+1) EA: mutate, keep the offspring if its fitness is not worse, stop
// once the current individual is optimal. runtime counts loop iterations, so
// an optimal initial individual gives 0. Exceeding max_iterations is not an
// error: the result has hit_optimum == false.
RunResult run_ea(const Benchmark& benchmark, const EaConfig& config, Rng& rng,
                 const RunOptions& options = {});

// Same, with the random stream seeded from config.seed.
RunResult run_ea(const Benchmark& benchmark, const EaConfig& config,
                 const RunOptions& options = {});

}  // namespace flm
