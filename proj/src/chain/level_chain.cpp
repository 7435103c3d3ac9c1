#include "flm/level_chain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "flm/binomial.hpp"
#include "flm/simd/kernels.hpp"

namespace flm::chain {

namespace {

constexpr std::size_t kLongPathChainCap = 4096;

double kahan_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::vector<double> start_vector(std::size_t levels, StartMode mode,
                                 const std::vector<double>& random_start) {
  if (mode.random) return random_start;
  if (mode.point >= levels) throw std::out_of_range("fixed start level out of range");
  std::vector<double> s(levels, 0.0);
  s[mode.point] = 1.0;
  return s;
}

// Levels below `target` from which [target, L) is not reached almost surely.
std::vector<bool> doomed_levels(const LevelChain& chain, std::size_t target) {
  std::vector<bool> doomed(chain.levels(), false);
  for (std::size_t i = target; i-- > 0;) {
    if (chain.leave_prob(i) == 0.0) {
      doomed[i] = true;
      continue;
    }
    for (std::size_t j = i + 1; j < target; ++j) {
      if (doomed[j] && chain.at(i, j) > 0.0) {
        doomed[i] = true;
        break;
      }
    }
  }
  return doomed;
}

}  // namespace

LevelChain::LevelChain(std::size_t levels, std::vector<double> transition,
                       std::vector<double> start)
    : levels_(levels), transition_(std::move(transition)), start_(std::move(start)) {
  if (levels_ < 1) throw std::invalid_argument("level chain needs at least one level");
  if (transition_.size() != levels_ * levels_) {
    throw std::invalid_argument("transition matrix has wrong size");
  }
  if (start_.size() != levels_) throw std::invalid_argument("start vector has wrong size");
  for (std::size_t i = 0; i < levels_; ++i) {
    for (std::size_t j = 0; j < levels_; ++j) {
      const double t = at(i, j);
      if (!(t >= 0.0) || t > 1.0 + kStochasticTolerance) {
        throw std::invalid_argument("transition entry outside [0,1] at row " + std::to_string(i));
      }
      if (j < i && t != 0.0) {
        throw std::invalid_argument("transition to a lower level at row " + std::to_string(i));
      }
    }
    if (std::abs(kahan_sum(row(i)) - 1.0) > kStochasticTolerance) {
      throw std::invalid_argument("transition row " + std::to_string(i) + " does not sum to 1");
    }
  }
  for (double s : start_) {
    if (!(s >= 0.0)) throw std::invalid_argument("negative start probability");
  }
  if (std::abs(kahan_sum(start_) - 1.0) > kStochasticTolerance) {
    throw std::invalid_argument("start distribution does not sum to 1");
  }
}

double LevelChain::leave_prob(std::size_t i) const {
  return kahan_sum(row(i).subspan(i + 1));
}

LevelChain LevelChain::with_start(std::vector<double> start) const {
  return LevelChain(levels_, transition_, std::move(start));
}

LevelChain onemax_level_matrix(std::size_t n, double p, StartMode start) {
  if (n < 1) throw std::invalid_argument("onemax chain requires n >= 1");
  const std::size_t L = n + 1;
  std::vector<double> T(L * L, 0.0);
  for (std::size_t i = 0; i < L; ++i) {
    const auto mutation = onemax_transition_row(n, p, i);
    for (std::size_t j = i + 1; j < L; ++j) T[i * L + j] = mutation[j];
    T[i * L + i] = 1.0 - kahan_sum(std::span<const double>(T).subspan(i * L + i + 1, L - i - 1));
  }
  return LevelChain(L, std::move(T), start_vector(L, start, binomial_pmf(n, 0.5)));
}

std::size_t JumpChain::fine_level_of_ones(std::size_t ones) const {
  for (std::size_t lvl = 0; lvl < ones_of_level.size(); ++lvl) {
    if (ones_of_level[lvl] == ones) return lvl;
  }
  throw std::out_of_range("ones count out of range");
}

std::size_t JumpChain::coarse_level(std::size_t fine) const {
  if (fine < first_n_level) return fine + 1;  // gap fitness j sits at fine level j-1
  if (fine <= last_n_level) return first_n_level + 1;
  return first_n_level + 2;
}

JumpChain jump_level_matrix(std::size_t n, std::size_t k, double p, StartMode start) {
  if (k < 2 || k > n) throw std::invalid_argument("jump chain requires 2 <= k <= n");
  const std::size_t L = n + 1;
  JumpChain jc{LevelChain(1, {1.0}, {1.0}), {}, 0, 0};
  // Gap classes by ascending fitness n - ones.
  for (std::size_t j = 1; j < k; ++j) jc.ones_of_level.push_back(n - j);
  jc.first_n_level = jc.ones_of_level.size();
  for (std::size_t a = 0; a <= n - k; ++a) jc.ones_of_level.push_back(a);
  jc.last_n_level = jc.ones_of_level.size() - 1;
  jc.ones_of_level.push_back(n);

  auto fitness = [&](std::size_t ones) {
    if (ones <= n - k || ones == n) return ones + k;
    return n - ones;
  };

  std::vector<double> T(L * L, 0.0);
  for (std::size_t from = 0; from < L; ++from) {
    const std::size_t a = jc.ones_of_level[from];
    const auto mutation = onemax_transition_row(n, p, a);
    for (std::size_t to = from + 1; to < L; ++to) {
      const std::size_t b = jc.ones_of_level[to];
      if (fitness(b) >= fitness(a)) T[from * L + to] = mutation[b];
    }
    T[from * L + from] =
        1.0 - kahan_sum(std::span<const double>(T).subspan(from * L + from + 1, L - from - 1));
  }

  std::vector<double> s(L, 0.0);
  if (start.random) {
    const auto pmf = binomial_pmf(n, 0.5);
    for (std::size_t lvl = 0; lvl < L; ++lvl) s[lvl] = pmf[jc.ones_of_level[lvl]];
  } else {
    if (start.point > n) throw std::out_of_range("fixed start ones count out of range");
    s[jc.fine_level_of_ones(start.point)] = 1.0;
  }
  jc.chain = LevelChain(L, std::move(T), std::move(s));
  return jc;
}

LevelChain longpath_level_matrix(const LongKPath& path, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("mutation rate must lie in (0, 1)");
  const auto& pts = path.points();
  const std::size_t L = pts.size();
  if (L > kLongPathChainCap) {
    throw std::invalid_argument("long path too long for an exact level chain");
  }
  const std::size_t n = path.n();
  std::vector<double> weight(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    weight[d] = std::exp(static_cast<double>(d) * std::log(p) +
                         static_cast<double>(n - d) * std::log1p(-p));
  }
  std::vector<double> T(L * L, 0.0);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) {
      T[i * L + j] = weight[pts[i].hamming_distance(pts[j])];
    }
    T[i * L + i] = 1.0 - kahan_sum(std::span<const double>(T).subspan(i * L + i + 1, L - i - 1));
  }
  std::vector<double> s(L, 0.0);
  s[0] = 1.0;
  return LevelChain(L, std::move(T), std::move(s));
}

LevelChain truncate(const LevelChain& chain, std::size_t from, std::size_t to) {
  if (!(from < to && to < chain.levels())) throw std::out_of_range("truncate: need from < to < levels");
  const std::size_t L = to - from + 1;
  std::vector<double> T(L * L, 0.0);
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const auto row = chain.row(from + i);
    for (std::size_t j = i; j + 1 < L; ++j) T[i * L + j] = row[from + j];
    T[i * L + L - 1] = kahan_sum(row.subspan(to));
  }
  T[L * L - 1] = 1.0;
  std::vector<double> s(L, 0.0);
  s[0] = 1.0;
  return LevelChain(L, std::move(T), std::move(s));
}

std::vector<double> visit_probabilities(const LevelChain& chain) {
  const std::size_t L = chain.levels();
  const auto& kernels = simd::active_kernels();
  std::vector<double> v(chain.start().begin(), chain.start().end());
  for (std::size_t j = 0; j + 1 < L; ++j) {
    if (v[j] == 0.0) continue;
    const double leave = chain.leave_prob(j);
    if (leave == 0.0) {
      throw std::domain_error("level " + std::to_string(j) +
                              " is absorbing but reached with positive probability");
    }
    // v_i += v_j * T[j][i] / p_j for all i > j
    kernels.axpy(v[j] / leave, chain.row(j).data() + j + 1, v.data() + j + 1, L - j - 1);
  }
  return v;
}

std::vector<double> expected_time_to_reach(const LevelChain& chain, std::size_t target) {
  const std::size_t L = chain.levels();
  if (target >= L) throw std::out_of_range("target level out of range");
  const auto& kernels = simd::active_kernels();
  const auto doomed = doomed_levels(chain, target);
  std::vector<double> E(L, 0.0);
  std::vector<double> work(L, 0.0);  // E with doomed entries left at 0 for the dot products
  for (std::size_t i = target; i-- > 0;) {
    if (doomed[i]) {
      E[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    // Entering [target, L) ends the wait, so only levels in (i, target) carry on.
    const double leave = chain.leave_prob(i);
    const double carry = kernels.dot(chain.row(i).data() + i + 1, work.data() + i + 1, target - i - 1);
    E[i] = (1.0 + carry) / leave;
    work[i] = E[i];
  }
  return E;
}

HittingTimes expected_hitting_time(const LevelChain& chain) {
  HittingTimes h;
  h.per_level = expected_time_to_reach(chain, chain.top());
  const auto v = visit_probabilities(chain);  // rejects traps reached with positive probability
  (void)v;
  double overall = 0.0;
  for (std::size_t i = 0; i < chain.levels(); ++i) {
    if (chain.start()[i] > 0.0) overall += chain.start()[i] * h.per_level[i];
  }
  h.overall = overall;
  return h;
}

double skip_probability(const LevelChain& chain, std::size_t first, std::size_t last) {
  const std::size_t L = chain.levels();
  if (first > last || last >= L) throw std::out_of_range("skip_probability: bad level range");
  const auto v = visit_probabilities(chain);
  double q = 0.0;
  for (std::size_t l = last + 1; l < L; ++l) q += chain.start()[l];
  for (std::size_t j = 0; j < first; ++j) {
    if (v[j] == 0.0) continue;
    const double over = kahan_sum(chain.row(j).subspan(last + 1));
    q += v[j] * over / chain.leave_prob(j);
  }
  return q;
}

ChainSummary summarize(const LevelChain& chain) {
  ChainSummary s;
  for (std::size_t i = 0; i < chain.top(); ++i) s.leave_probs.push_back(chain.leave_prob(i));
  s.visit_probs = visit_probabilities(chain);
  for (double v : s.visit_probs) s.skip_probs.push_back(1.0 - v);
  auto h = expected_hitting_time(chain);
  s.expected_from_level = std::move(h.per_level);
  s.expected_time = h.overall;
  return s;
}

}  // namespace flm::chain
