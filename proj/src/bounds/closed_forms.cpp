#include "flm/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flm/binomial.hpp"

namespace flm::bounds {

namespace {

constexpr double kE = std::numbers::e;

void check_longpath_args(std::size_t n, std::size_t k, double p) {
  if (k < 2) throw std::invalid_argument("long path requires k >= 2");
  if (n == 0 || n % k != 0) throw std::invalid_argument("long path requires k | n");
  if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("long path bound requires 0 < p <= 1/2");
}

double longpath_steps(std::size_t n, std::size_t k) {
  const double kd = static_cast<double>(k);
  return kd * std::ldexp(1.0, static_cast<int>(n / k)) - kd;
}

// log of m (1-2p)/(p (1-p)^n) * (1-2p)/(1-p); -inf when p = 1/2.
double longpath_log_prefix(std::size_t n, double m, double p) {
  const double one_minus_2p = 1.0 - 2.0 * p;
  if (one_minus_2p <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(m) + 2.0 * std::log(one_minus_2p) - std::log(p) -
         static_cast<double>(n) * std::log1p(-p) - std::log1p(-p);
}

LongPathBound longpath_shape(std::size_t n, double m, double p, double x, bool proven) {
  LongPathBound b;
  b.proven = proven;
  const double log_prefix = longpath_log_prefix(n, m, p);
  if (x >= 1.0) {
    b.clamped = true;
    b.value = 0.0;
    return b;
  }
  if (std::isinf(log_prefix)) return b;
  b.value = std::exp(log_prefix + m * std::log1p(-x));
  return b;
}

}  // namespace

double e_n_factor(std::size_t n) {
  if (n == 0) throw std::invalid_argument("e_n requires n >= 1");
  if (n == 1) return 1.0;
  const double nd = static_cast<double>(n);
  return std::exp(-(nd - 1.0) * std::log1p(-1.0 / nd));
}

double leadingones_exact(std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("mutation rate must lie in (0, 1)");
  // (1/2) * ((1-p)^-n - 1) (1-p) / p^2
  const double growth = std::expm1(-static_cast<double>(n) * std::log1p(-p));
  return 0.5 * growth * (1.0 - p) / (p * p);
}

double onemax_skip_bound(std::size_t n, std::size_t i) {
  if (n < 2) throw std::invalid_argument("skip bound requires n >= 2");
  if (i < 1 || i > n) throw std::out_of_range("skip bound requires 1 <= i <= n");
  const double nd = static_cast<double>(n);
  const double survive = std::exp(static_cast<double>(i - 1) * std::log1p(-1.0 / nd));
  const double q = static_cast<double>(n - i) / (nd * survive);
  return std::clamp(q, 0.0, 1.0);
}

OneMaxBounds onemax_bounds(std::size_t n, std::size_t k, std::size_t l) {
  if (n < 2) throw std::invalid_argument("onemax bounds require n >= 2");
  if (!(k < l && l <= n)) throw std::invalid_argument("onemax bounds require 0 <= k < l <= n");
  const double nd = static_cast<double>(n);
  const double p = 1.0 / nd;
  OneMaxBounds b;
  b.n = n;
  b.k = k;
  b.l = l;
  b.e_n = e_n_factor(n);
  for (std::size_t i = k; i < l; ++i) {
    const auto row = chain::onemax_transition_row(n, p, i);
    double leave = 0.0;
    for (std::size_t j = n; j > i; --j) leave += row[j];  // smallest terms first
    b.tilde_T += 1.0 / leave;
  }
  double harmonic = 0.0;
  for (std::size_t i = n - k; i >= n - l + 1; --i) harmonic += 1.0 / static_cast<double>(i);
  const double width = static_cast<double>(l - k);
  b.tilde_T_plus = b.e_n * nd * harmonic;
  b.tilde_T_minus = b.tilde_T_plus - 0.5 * b.e_n * b.e_n * width;
  if (b.tilde_T_minus < 0.0) {
    b.tilde_T_minus = 0.0;
    b.tilde_T_minus_clamped = true;
  }
  const double correction =
      (width - 1.0) * kE * (kE - 1.0) * std::exp(static_cast<double>(k) / (nd - 1.0));
  b.thm_lower = b.tilde_T - correction;
  if (b.thm_lower < 0.0) {
    b.thm_lower = 0.0;
    b.thm_lower_clamped = true;
  }
  return b;
}

std::string_view to_string(JumpInit init) {
  return init == JumpInit::arbitrary ? "arbitrary" : "random";
}

JumpInit parse_jump_init(std::string_view s) {
  if (s == "arbitrary" || s == "fixed") return JumpInit::arbitrary;
  if (s == "random") return JumpInit::random;
  throw std::invalid_argument("unknown init mode: " + std::string(s));
}

JumpBounds jump_bounds(std::size_t n, std::size_t k) {
  if (n < 4) throw std::invalid_argument("jump bounds require n >= 4");
  if (k < 2 || k > n) throw std::invalid_argument("jump bounds require 2 <= k <= n");
  const double nd = static_cast<double>(n);
  JumpBounds b;
  b.n = n;
  b.k = k;
  b.p_k = std::exp(static_cast<double>(n - k) * std::log1p(-1.0 / nd) -
                   static_cast<double>(k) * std::log(nd));
  double arb = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    arb += kE / (std::pow(nd, static_cast<double>(j - 1)) * (nd - static_cast<double>(j)));
  }
  b.skip_bound_arbitrary = std::min(arb, 1.0);
  const double quarter = static_cast<double>((n + 3) / 4);
  const double rnd = 6.0 * kE * std::ldexp(1.0, -static_cast<int>(n)) +
                     2.0 * kE * std::pow(nd, 1.0 - quarter) + std::ldexp(1.0, -static_cast<int>(n));
  b.skip_bound_random = std::min(rnd, 1.0);
  b.lower_bound_arbitrary = (1.0 - b.skip_bound_arbitrary) / b.p_k;
  b.lower_bound_random = (1.0 - b.skip_bound_random) / b.p_k;
  return b;
}

LongPathBound longpath_lower_bound(std::size_t n, std::size_t k, double p) {
  check_longpath_args(n, k, p);
  const double m = longpath_steps(n, k);
  const double x = m * std::pow(p / (1.0 - p), static_cast<double>(k - 1));
  return longpath_shape(n, m, p, x, true);
}

LongPathBound sudholt_reference_bound(std::size_t n, std::size_t k, double p) {
  check_longpath_args(n, k, p);
  const double m = longpath_steps(n, k);
  const double x = std::pow(p / (1.0 - p), static_cast<double>(k));
  return longpath_shape(n, m, p, x, false);
}

double longpath_leave_prob(std::size_t n, std::size_t k, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("mutation rate must lie in (0, 1)");
  if (k < 1 || k > n) throw std::invalid_argument("longpath_leave_prob requires 1 <= k <= n");
  double s = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    s += std::exp(static_cast<double>(j) * std::log(p) +
                  static_cast<double>(n - j) * std::log1p(-p));
  }
  return s;
}

double longpath_leave_prob_upper(std::size_t n, double p) {
  if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("requires 0 < p <= 1/2");
  if (p == 0.5) return std::numeric_limits<double>::infinity();
  return p * std::exp(static_cast<double>(n) * std::log1p(-p)) / (1.0 - 2.0 * p);
}

double longpath_visit_lower(double p) {
  if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("requires 0 < p <= 1/2");
  return (1.0 - 2.0 * p) / (1.0 - p);
}

}  // namespace flm::bounds
