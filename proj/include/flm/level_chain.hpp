#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flm/long_path.hpp"

namespace flm::chain {

inline constexpr double kStochasticTolerance = 1e-12;

// Row-stochastic, upper-triangular transition matrix over levels 0..L-1 plus
// a start distribution. The top level L-1 is the target. Immutable.
class LevelChain {
 public:
  // Throws std::invalid_argument when a row or the start vector does not sum
  // to 1 within kStochasticTolerance, an entry is negative, or T[i][j] != 0
  // for some j < i.
  LevelChain(std::size_t levels, std::vector<double> transition, std::vector<double> start);

  std::size_t levels() const { return levels_; }
  std::size_t top() const { return levels_ - 1; }
  double at(std::size_t i, std::size_t j) const { return transition_[i * levels_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {transition_.data() + i * levels_, levels_};
  }
  std::span<const double> start() const { return start_; }

  // Probability of moving to a strictly higher level, summed off-diagonal so
  // tiny values keep their relative precision.
  double leave_prob(std::size_t i) const;

  LevelChain with_start(std::vector<double> start) const;

 private:
  std::size_t levels_;
  std::vector<double> transition_;
  std::vector<double> start_;
};

struct StartMode {
  bool random = true;
  std::size_t point = 0;  // ones count (or level) of the fixed start

  static StartMode uniform() { return {true, 0}; }
  static StartMode fixed(std::size_t p) { return {false, p}; }
};

// OneMax level process with T[i][j] = p_{i,j} for j > i and all other mass
// on the diagonal. Random start is Binomial(n, 1/2) over levels.
LevelChain onemax_level_matrix(std::size_t n, double p, StartMode start = StartMode::uniform());

// Jump chain over ones-count classes. Fine levels are ordered by jump
// fitness: the gap classes n-1, n-2, ..., n-k+1 first, then the classes
// 0..n-k, then the optimum. StartMode::fixed takes a ones count.
struct JumpChain {
  LevelChain chain;
  std::vector<std::size_t> ones_of_level;  // fine level -> ones count
  std::size_t first_n_level = 0;           // fine levels making up N = {|x| <= n-k}
  std::size_t last_n_level = 0;

  std::size_t fine_level_of_ones(std::size_t ones) const;
  // Fine level -> coarse level (1..k-1 gap, k = N, k+1 optimum).
  std::size_t coarse_level(std::size_t fine) const;
};

JumpChain jump_level_matrix(std::size_t n, std::size_t k, double p,
                            StartMode start = StartMode::uniform());

// Exact chain of a long k-path started at the all-zero point; level i is the
// i-th path point. Off-path points are never accepted from the path.
LevelChain longpath_level_matrix(const LongKPath& path, double p);

// Chain over levels from..to started at `from`, with every level >= to
// merged into the new top.
LevelChain truncate(const LevelChain& chain, std::size_t from, std::size_t to);

// v_i = Pr[level i is ever occupied]. Throws std::domain_error when a non-top
// absorbing level is reached with positive probability.
std::vector<double> visit_probabilities(const LevelChain& chain);

struct HittingTimes {
  std::vector<double> per_level;  // E_i from a start at level i; +inf when the top is not reached a.s.
  double overall = 0.0;           // sum_i start_i E_i
};

HittingTimes expected_hitting_time(const LevelChain& chain);

// Expected iterations from each level until a level >= target is entered.
std::vector<double> expected_time_to_reach(const LevelChain& chain, std::size_t target);

// Pr[no level in [first, last] is ever occupied].
double skip_probability(const LevelChain& chain, std::size_t first, std::size_t last);

struct ChainSummary {
  std::vector<double> leave_probs;  // non-top levels
  std::vector<double> visit_probs;
  std::vector<double> skip_probs;
  std::vector<double> expected_from_level;
  double expected_time = 0.0;
};

ChainSummary summarize(const LevelChain& chain);

}  // namespace flm::chain
