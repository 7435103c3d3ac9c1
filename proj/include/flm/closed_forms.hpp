#pragma once

#include <cstddef>
#include <string_view>

namespace flm::bounds {

// (1 - 1/n)^-(n-1); 1 for n = 1.
double e_n_factor(std::size_t n);

// Expected runtime of the (1+1) EA with rate p on LeadingOnes from a uniform
// random start: (1/2) sum_{i<n} 1/((1-p)^i p).
double leadingones_exact(std::size_t n, double p);

// Upper bound on the probability that OneMax (rate 1/n) never has fitness i,
// (n-i) / (n (1-1/n)^(i-1)), clamped to [0, 1].
double onemax_skip_bound(std::size_t n, std::size_t i);

// OneMax with rate 1/n, started at fitness k, target fitness l.
struct OneMaxBounds {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  double e_n = 0.0;
  double tilde_T = 0.0;        // sum_{i=k}^{l-1} 1/p_i, exact p_i
  double tilde_T_plus = 0.0;   // e_n n sum_{i=n-l+1}^{n-k} 1/i
  double tilde_T_minus = 0.0;  // tilde_T_plus - e_n^2 (l-k) / 2
  double thm_lower = 0.0;      // tilde_T - (l-k-1) e (e-1) exp(k/(n-1))
  bool thm_lower_clamped = false;
  bool tilde_T_minus_clamped = false;
};

OneMaxBounds onemax_bounds(std::size_t n, std::size_t k, std::size_t l);

enum class JumpInit { arbitrary, random };

std::string_view to_string(JumpInit init);
JumpInit parse_jump_init(std::string_view s);

struct JumpBounds {
  std::size_t n = 0;
  std::size_t k = 0;
  double p_k = 0.0;                   // (1-1/n)^(n-k) n^-k
  double skip_bound_arbitrary = 0.0;  // sum_{j=1}^{k-1} e / (n^(j-1) (n-j)), capped at 1
  double skip_bound_random = 0.0;     // 6e 2^-n + 2e n^(1-ceil(n/4)) + 2^-n, capped at 1
  double lower_bound_arbitrary = 0.0;
  double lower_bound_random = 0.0;

  double skip_bound(JumpInit init) const {
    return init == JumpInit::arbitrary ? skip_bound_arbitrary : skip_bound_random;
  }
  double lower_bound(JumpInit init) const {
    return init == JumpInit::arbitrary ? lower_bound_arbitrary : lower_bound_random;
  }
};

// Requires n >= 4 and 2 <= k <= n.
JumpBounds jump_bounds(std::size_t n, std::size_t k);

// Long k-path from the all-zero string with rate p; k >= 2, k | n, 0 < p <= 1/2.
struct LongPathBound {
  double value = 0.0;
  bool clamped = false;  // the (1 - m x)^m factor was cut off at 0
  bool proven = true;
};

// m = k 2^(n/k) - k;
// m (1-2p) / (p (1-p)^n) * (1-2p)/(1-p) * max(0, 1 - m (p/(1-p))^(k-1))^m.
LongPathBound longpath_lower_bound(std::size_t n, std::size_t k, double p);

// Same shape with (1 - (p/(1-p))^k)^m. No proof is known; proven = false.
LongPathBound sudholt_reference_bound(std::size_t n, std::size_t k, double p);

// sum_{j=1}^{k-1} p^j (1-p)^(n-j)
double longpath_leave_prob(std::size_t n, std::size_t k, double p);

// p (1-p)^n / (1-2p); +inf at p = 1/2.
double longpath_leave_prob_upper(std::size_t n, double p);

// (1-2p) / (1-p)
double longpath_visit_lower(double p);

}  // namespace flm::bounds
