#include "flm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "flm/rng.hpp"

namespace flm {

namespace {

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

// "a" or "a/b".
double parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_real(s);
  const double den = parse_real(s.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  return parse_real(s.substr(0, slash)) / den;
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw std::invalid_argument("not a count: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

MutationRate MutationRate::parse(std::string_view text) {
  MutationRate r;
  if (text.size() >= 2 && text.substr(text.size() - 2) == "/n") {
    r.per_n = true;
    r.value = text.size() == 2 ? 1.0 : parse_rational(text.substr(0, text.size() - 2));
  } else {
    r.per_n = false;
    r.value = parse_rational(text);
  }
  if (!(r.value > 0.0) || !std::isfinite(r.value)) {
    throw std::invalid_argument("mutation rate must be positive: '" + std::string(text) + "'");
  }
  return r;
}

double MutationRate::resolve(std::size_t n) const {
  const double p = per_n ? value / static_cast<double>(n) : value;
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("mutation rate " + to_string() + " is outside (0, 1) for n = " +
                                std::to_string(n));
  }
  return p;
}

std::string MutationRate::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return per_n ? std::string(buf) + "/n" : std::string(buf);
}

InitMode InitMode::parse(std::string_view text) {
  InitMode m;
  if (text == "random") return m;
  if (text == "zero") {
    m.kind = Kind::zero;
    return m;
  }
  if (text.starts_with("ones:")) {
    m.kind = Kind::ones;
    m.ones = parse_count(text.substr(5));
    return m;
  }
  if (text.starts_with("bits:")) {
    m.kind = Kind::bits;
    m.bits = std::string(text.substr(5));
    (void)BitString::from_string(m.bits);
    return m;
  }
  throw std::invalid_argument("unknown init mode '" + std::string(text) +
                              "' (random, zero, ones:K, bits:S)");
}

std::string InitMode::to_string() const {
  switch (kind) {
    case Kind::random: return "random";
    case Kind::zero: return "zero";
    case Kind::ones: return "ones:" + std::to_string(ones);
    case Kind::bits: return "bits:" + bits;
  }
  return "?";
}

BitString InitMode::point(std::size_t n) const {
  switch (kind) {
    case Kind::random: throw std::logic_error("random init has no fixed point");
    case Kind::zero: return BitString(n);
    case Kind::ones: {
      if (ones > n) throw std::invalid_argument("ones:K needs K <= n");
      BitString x(n);
      for (std::size_t i = 0; i < ones; ++i) x.set(i, true);
      return x;
    }
    case Kind::bits: {
      BitString x = BitString::from_string(bits);
      if (x.size() != n) throw std::invalid_argument("bits:S must have n characters");
      return x;
    }
  }
  throw std::logic_error("bad init kind");
}

InitMode ExperimentConfig::effective_init() const {
  if (init) return *init;
  InitMode m;
  if (benchmark == BenchmarkKind::longpath) m.kind = InitMode::Kind::zero;
  return m;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (max_iterations < 1) throw std::invalid_argument("max-iterations must be at least 1");
  (void)mutation_rate();
  const InitMode m = effective_init();
  if (!m.is_random()) (void)m.point(n);
}

std::shared_ptr<const Benchmark> ExperimentConfig::make() const {
  return make_benchmark(benchmark, n, k);
}

void aggregate(RunStatistics& stats, const std::vector<RunResult>& results,
               std::size_t level_count) {
  const std::size_t R = results.size();
  stats.replicates = R;
  stats.timeouts = 0;
  stats.runs.clear();
  double sum = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    stats.runs.push_back({r, results[r].runtime, results[r].hit_optimum});
    sum += static_cast<double>(results[r].runtime);
    if (!results[r].hit_optimum) ++stats.timeouts;
  }
  stats.mean = R ? sum / static_cast<double>(R) : 0.0;
  double ss = 0.0;
  for (const auto& res : results) {
    const double d = static_cast<double>(res.runtime) - stats.mean;
    ss += d * d;
  }
  stats.variance = R > 1 ? ss / static_cast<double>(R - 1) : 0.0;
  stats.se = R ? std::sqrt(stats.variance / static_cast<double>(R)) : 0.0;
  stats.ci_low = stats.mean - kZ99 * stats.se;
  stats.ci_high = stats.mean + kZ99 * stats.se;

  stats.levels.assign(level_count, {});
  for (std::size_t l = 0; l < level_count; ++l) stats.levels[l].level = l;
  for (const auto& res : results) {
    const auto& trace = res.level_trace;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      auto& ls = stats.levels.at(trace[i].level);
      ++ls.visits;
      ls.iterations += trace[i].iterations;
      if (i + 1 < trace.size()) ++ls.leaves;
    }
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto& ls : stats.levels) {
    const double v = R ? static_cast<double>(ls.visits) / static_cast<double>(R) : 0.0;
    ls.visit_freq = v;
    ls.visit_se = R ? std::sqrt(v * (1.0 - v) / static_cast<double>(R)) : 0.0;
    ls.leave_rate = ls.iterations ? static_cast<double>(ls.leaves) / static_cast<double>(ls.iterations) : nan;
    ls.mean_sojourn = ls.visits ? static_cast<double>(ls.iterations) / static_cast<double>(ls.visits) : nan;
  }
}

RunStatistics run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto bench = config.make();
  const LevelFunction levels = canonical_levels(bench);
  EaConfig ea;
  ea.n = config.n;
  ea.mutation_rate = config.mutation_rate();
  ea.max_iterations = config.max_iterations;
  const InitMode init = config.effective_init();
  RunOptions opts;
  opts.levels = levels;
  if (!init.is_random()) opts.initial = init.point(config.n);

  std::vector<RunResult> results(config.replicates);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t r = next++; r < config.replicates; r = next++) {
        Rng rng = replicate_stream(config.master_seed, r);
        results[r] = run_ea(*bench, ea, rng, opts);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = config.replicates;
    }
  };
  const std::size_t nthreads =
      static_cast<std::size_t>(std::min<std::uint64_t>(config.threads, config.replicates));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  RunStatistics stats;
  aggregate(stats, results, levels.count);
  return stats;
}

}  // namespace flm
