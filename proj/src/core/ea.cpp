#include "flm/ea.hpp"

#include <stdexcept>

namespace flm {

void EaConfig::validate() const {
  if (n < 1) throw std::invalid_argument("EA dimension n must be positive");
  if (!(mutation_rate > 0.0 && mutation_rate < 1.0)) {
    throw std::invalid_argument("mutation rate must lie in (0, 1)");
  }
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");
}

std::string RunResult::serialize() const {
  std::string s = "runtime=" + std::to_string(runtime) + ";hit=" + (hit_optimum ? "1" : "0") +
                  ";trace=";
  for (std::size_t i = 0; i < level_trace.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(level_trace[i].level) + ':' + std::to_string(level_trace[i].iterations);
  }
  return s;
}

BitString uniform_random_bitstring(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("bit string length must be positive");
  BitString x(n);
  std::size_t i = 0;
  while (i < n) {
    std::uint64_t word = rng();
    for (std::size_t b = 0; b < 64 && i < n; ++b, ++i) {
      if ((word >> b) & 1u) x.flip(i);
    }
  }
  return x;
}

namespace {

double checked_rate(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mutation rate must lie in [0, 1]");
  return p;
}

}  // namespace

FlipSampler::FlipSampler(std::size_t n, double p)
    : n_(n), p_(checked_rate(p)), count_(n, p_), chosen_(n, false) {
  positions_.reserve(16);
}

const std::vector<std::size_t>& FlipSampler::sample(Rng& rng) {
  positions_.clear();
  std::size_t flips;
  if (p_ <= 0.0) {
    flips = 0;
  } else if (p_ >= 1.0) {
    flips = n_;
  } else {
    flips = count_(rng);
  }
  if (flips == n_) {
    for (std::size_t i = 0; i < n_; ++i) positions_.push_back(i);
    return positions_;
  }
  // Floyd: for j in [n - K, n), pick t uniform in [0, j]; take t unless
  // already taken, then take j.
  for (std::size_t j = n_ - flips; j < n_; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    std::size_t t = pick(rng);
    if (chosen_[t]) t = j;
    chosen_[t] = true;
    positions_.push_back(t);
  }
  for (std::size_t t : positions_) chosen_[t] = false;
  return positions_;
}

BitString standard_bit_mutation(const BitString& x, double p, Rng& rng) {
  FlipSampler sampler(x.size(), p);
  BitString y = x;
  for (std::size_t i : sampler.sample(rng)) y.flip(i);
  return y;
}

RunResult run_ea(const Benchmark& benchmark, const EaConfig& config, Rng& rng,
                 const RunOptions& options) {
  config.validate();
  if (benchmark.n() != config.n) {
    throw std::invalid_argument("benchmark dimension does not match config.n");
  }
  BitString x = options.initial ? *options.initial : uniform_random_bitstring(config.n, rng);
  if (x.size() != config.n) throw std::invalid_argument("initial individual has wrong length");

  RunResult result;
  const bool tracing = options.levels.has_value();
  std::size_t current_level = tracing ? options.levels->level(x) : 0;
  std::uint64_t sojourn = 0;

  FlipSampler sampler(config.n, config.mutation_rate);
  std::int64_t fx = benchmark.fitness(x);
  bool optimal = benchmark.is_optimum(x);
  std::uint64_t t = 0;
  while (!optimal && t < config.max_iterations) {
    ++t;
    ++sojourn;
    const auto& flips = sampler.sample(rng);
    if (!flips.empty()) {
      for (std::size_t i : flips) x.flip(i);
      const std::int64_t fy = benchmark.fitness(x);
      if (fy >= fx) {
        fx = fy;
        optimal = benchmark.is_optimum(x);
        if (tracing) {
          const std::size_t lvl = options.levels->level(x);
          if (lvl != current_level) {
            result.level_trace.push_back({current_level, sojourn});
            current_level = lvl;
            sojourn = 0;
          }
        }
      } else {
        for (std::size_t i : flips) x.flip(i);
      }
    }
    if (options.fitness_observer) options.fitness_observer(t, fx);
  }
  if (tracing) result.level_trace.push_back({current_level, sojourn});
  result.runtime = t;
  result.hit_optimum = optimal;
  return result;
}

RunResult run_ea(const Benchmark& benchmark, const EaConfig& config, const RunOptions& options) {
  Rng rng = make_rng(config.seed);
  return run_ea(benchmark, config, rng, options);
}

}  // namespace flm
