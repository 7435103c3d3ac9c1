#pragma once

#include <cstddef>
#include <vector>

namespace flm::chain {

// log C(n, k) via lgamma; -inf when k > n.
double log_choose(std::size_t n, std::size_t k);

// Pr[Bin(n, p) = j] for j = 0..n, assembled in log space. Entries below the
// double range are 0.
std::vector<double> binomial_pmf(std::size_t n, double p);

// Probability that standard bit mutation with rate p turns a parent with k
// ones into an offspring with l ones:
//   sum_b C(n-k, b) C(k, b+k-l) p^(2b+k-l) (1-p)^(n-2b-k+l)
// over b = max(0, l-k)..min(n-k, l). Evaluated with log-sum-exp, so it stays
// accurate for n in the thousands. Throws std::out_of_range for k, l > n and
// std::invalid_argument for p outside (0, 1).
double onemax_transition_prob(std::size_t n, double p, std::size_t k, std::size_t l);

// The full row l = 0..n of the above, as the convolution of the flip-count
// distributions of the zero bits and the one bits.
std::vector<double> onemax_transition_row(std::size_t n, double p, std::size_t k);

}  // namespace flm::chain
