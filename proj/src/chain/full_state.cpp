#include "flm/full_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace flm::chain {

namespace {

struct StateInfo {
  std::uint32_t code;
  std::int64_t fitness;
  bool optimal;
  std::size_t level;
};

// In-place LU without pivoting. The blocks are row diagonally dominant
// (diagonal = all accepted mass, off-diagonal = same-fitness moves), which
// keeps the elimination stable.
void lu_factor(std::vector<double>& a, std::size_t b, const simd::KernelSet& k) {
  for (std::size_t piv = 0; piv < b; ++piv) {
    const double d = a[piv * b + piv];
    if (!(d > 0.0)) {
      throw std::domain_error("full-state oracle: a fitness class cannot be left");
    }
    for (std::size_t r = piv + 1; r < b; ++r) {
      double& lr = a[r * b + piv];
      if (lr == 0.0) continue;
      lr /= d;
      k.axpy(-lr, a.data() + piv * b + piv + 1, a.data() + r * b + piv + 1, b - piv - 1);
    }
  }
}

void lu_solve(const std::vector<double>& a, std::size_t b, std::vector<double>& x,
              const simd::KernelSet& k) {
  for (std::size_t r = 1; r < b; ++r) x[r] -= k.dot(a.data() + r * b, x.data(), r);
  for (std::size_t r = b; r-- > 0;) {
    const double tail = k.dot(a.data() + r * b + r + 1, x.data() + r + 1, b - r - 1);
    x[r] = (x[r] - tail) / a[r * b + r];
  }
}

}  // namespace

FullStateResult full_state_expected_time(const Benchmark& benchmark, double p,
                                         const FullStateOptions& options) {
  const std::size_t n = benchmark.n();
  if (n < 1 || n > kFullStateMaxN) {
    throw std::invalid_argument("full-state oracle supports 1 <= n <= " +
                                std::to_string(kFullStateMaxN));
  }
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("mutation rate must lie in (0, 1)");
  if (options.start && options.start->size() != n) {
    throw std::invalid_argument("start point has wrong length");
  }
  const simd::KernelSet& kern = options.kernels ? *options.kernels : simd::active_kernels();
  const std::size_t N = std::size_t{1} << n;
  const std::size_t levels = benchmark.level_count();

  std::vector<StateInfo> states(N);
  for (std::size_t mask = 0; mask < N; ++mask) {
    const BitString x = BitString::from_mask(mask, n);
    states[mask] = {static_cast<std::uint32_t>(mask), benchmark.fitness(x),
                    benchmark.is_optimum(x), benchmark.level(x)};
  }
  // Fitness descending; optimal states ahead of equal-fitness others.
  std::vector<StateInfo> order = states;
  std::sort(order.begin(), order.end(), [](const StateInfo& a, const StateInfo& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    if (a.optimal != b.optimal) return a.optimal;
    return a.code < b.code;
  });

  std::vector<std::uint32_t> codes(N);
  for (std::size_t i = 0; i < N; ++i) codes[i] = order[i].code;

  std::vector<double> weight(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    weight[d] = std::exp(static_cast<double>(d) * std::log(p) +
                         static_cast<double>(n - d) * std::log1p(-p));
  }

  const std::vector<double> ones(N, 1.0);
  std::vector<double> times(N, 0.0);
  // hit[i][pos]: probability that the first state entered at level >= i is at level i.
  std::vector<std::vector<double>> hit;
  if (options.visit_probabilities) hit.assign(levels, std::vector<double>(N, 0.0));

  std::vector<double> block;
  std::vector<double> column;
  std::size_t pos = 0;
  while (pos < N) {
    if (order[pos].optimal) {
      times[pos] = 0.0;
      for (std::size_t i = 0; i < hit.size(); ++i) hit[i][pos] = order[pos].level == i ? 1.0 : 0.0;
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < N && !order[end].optimal && order[end].fitness == order[pos].fitness) {
      if (order[end].level != order[pos].level) {
        throw std::logic_error("level function is not fitness-based");
      }
      ++end;
    }
    const std::size_t b = end - pos;
    const std::size_t group_level = order[pos].level;

    block.assign(b * b, 0.0);
    for (std::size_t r = 0; r < b; ++r) {
      const std::uint32_t x = codes[pos + r];
      double accepted = kern.hamming_weighted_sum(x, codes.data(), ones.data(), end, weight.data());
      accepted -= weight[0];
      for (std::size_t c = 0; c < b; ++c) {
        if (c != r) block[r * b + c] = -weight[std::popcount(x ^ codes[pos + c])];
      }
      block[r * b + r] = accepted;
    }
    lu_factor(block, b, kern);

    column.resize(b);
    for (std::size_t r = 0; r < b; ++r) {
      column[r] = 1.0 + kern.hamming_weighted_sum(codes[pos + r], codes.data(), times.data(), pos,
                                                 weight.data());
    }
    lu_solve(block, b, column, kern);
    std::copy(column.begin(), column.end(), times.begin() + static_cast<std::ptrdiff_t>(pos));

    for (std::size_t i = 0; i < hit.size(); ++i) {
      if (i <= group_level) {
        const double fixed = i == group_level ? 1.0 : 0.0;
        std::fill(hit[i].begin() + static_cast<std::ptrdiff_t>(pos),
                  hit[i].begin() + static_cast<std::ptrdiff_t>(end), fixed);
        continue;
      }
      for (std::size_t r = 0; r < b; ++r) {
        column[r] = kern.hamming_weighted_sum(codes[pos + r], codes.data(), hit[i].data(), pos,
                                              weight.data());
      }
      lu_solve(block, b, column, kern);
      std::copy(column.begin(), column.end(), hit[i].begin() + static_cast<std::ptrdiff_t>(pos));
    }
    pos = end;
  }

  FullStateResult result;
  result.state_times.assign(N, 0.0);
  std::vector<std::size_t> position_of(N);
  for (std::size_t i = 0; i < N; ++i) {
    result.state_times[codes[i]] = times[i];
    position_of[codes[i]] = i;
  }

  if (options.start) {
    const std::size_t s = static_cast<std::size_t>(options.start->to_mask());
    result.expected_time = result.state_times[s];
    for (const auto& h : hit) result.visit_probs.push_back(h[position_of[s]]);
  } else {
    const double w = 1.0 / static_cast<double>(N);
    result.expected_time = w * std::accumulate(times.begin(), times.end(), 0.0);
    for (const auto& h : hit) {
      result.visit_probs.push_back(w * std::accumulate(h.begin(), h.end(), 0.0));
    }
  }
  return result;
}

}  // namespace flm::chain
