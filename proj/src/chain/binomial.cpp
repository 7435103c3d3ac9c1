#include "flm/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "flm/simd/kernels.hpp"

namespace flm::chain {

namespace {

void check_rate(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("mutation rate must lie in (0, 1)");
}

}  // namespace

double log_choose(std::size_t n, std::size_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
  check_rate(p);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  std::vector<double> pmf(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    pmf[j] = std::exp(log_choose(n, j) + static_cast<double>(j) * lp +
                      static_cast<double>(n - j) * lq);
  }
  return pmf;
}

double onemax_transition_prob(std::size_t n, double p, std::size_t k, std::size_t l) {
  if (k > n || l > n) throw std::out_of_range("onemax_transition_prob: level index out of range");
  check_rate(p);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  // b zero-bits flipped, a = b + k - l one-bits flipped.
  const std::size_t b_lo = l > k ? l - k : 0;
  const std::size_t b_hi = std::min(n - k, l);
  if (b_lo > b_hi) return 0.0;
  std::vector<double> terms;
  terms.reserve(b_hi - b_lo + 1);
  for (std::size_t b = b_lo; b <= b_hi; ++b) {
    const std::size_t a = b + k - l;
    const std::size_t flips = a + b;
    terms.push_back(log_choose(n - k, b) + log_choose(k, a) + static_cast<double>(flips) * lp +
                    static_cast<double>(n - flips) * lq);
  }
  const double peak = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return std::exp(peak + std::log(sum));
}

std::vector<double> onemax_transition_row(std::size_t n, double p, std::size_t k) {
  if (k > n) throw std::out_of_range("onemax_transition_row: level index out of range");
  const auto zeros = binomial_pmf(n - k, p);  // b zero-bits flipped: +b
  const auto ones = binomial_pmf(k, p);       // a one-bits flipped: -a
  std::vector<double> row(n + 1, 0.0);
  const auto& kernels = simd::active_kernels();
  for (std::size_t a = 0; a <= k; ++a) {
    if (ones[a] == 0.0) continue;
    // target l = k - a + b
    kernels.axpy(ones[a], zeros.data(), row.data() + (k - a), zeros.size());
  }
  return row;
}

}  // namespace flm::chain
