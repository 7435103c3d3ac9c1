#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "flm/benchmarks.hpp"
#include "flm/closed_forms.hpp"
#include "flm/full_state.hpp"
#include "flm/level_chain.hpp"

using namespace flm;
using namespace flm::bounds;

constexpr double kE = std::numbers::e;

TEST_CASE("e_n") {
  CHECK(e_n_factor(1) == 1.0);
  CHECK(e_n_factor(2) == doctest::Approx(2.0).epsilon(1e-15));
  const double e100 = e_n_factor(100);
  CHECK(e100 >= kE * 0.99);
  CHECK(e100 <= kE);
  for (std::size_t n = 2; n <= 1000; ++n) {
    const double en = e_n_factor(n);
    CHECK(en <= kE);
    CHECK(en >= kE * (1.0 - 1.0 / static_cast<double>(n)));
    // direct power, no logs
    CHECK(en == doctest::Approx(1.0 / std::pow(1.0 - 1.0 / static_cast<double>(n), static_cast<double>(n - 1))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(e_n_factor(0), std::invalid_argument);
}

TEST_CASE("LeadingOnes closed form") {
  CHECK(leadingones_exact(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(leadingones_exact(2, 0.5) == doctest::Approx(3.0).epsilon(1e-15));
  const double n100 = leadingones_exact(100, 0.01);
  CHECK(std::abs(n100 / (1e4 * (kE - 1.0) / 2.0) - 1.0) <= 0.02);
  CHECK(n100 == doctest::Approx(8573.3).epsilon(1e-4));
  CHECK_THROWS_AS(leadingones_exact(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(leadingones_exact(5, 1.0), std::invalid_argument);
}

TEST_CASE("LeadingOnes closed form equals the full-state oracle") {
  for (std::size_t n = 1; n <= 9; ++n) {
    for (double p : {0.5, 1.0 / static_cast<double>(n + 1), 0.05}) {
      LeadingOnesBenchmark lo(n);
      const double exact = chain::full_state_expected_time(lo, p).expected_time;
      CHECK(leadingones_exact(n, p) == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("LeadingOnes closed form matches the direct sum") {
  for (std::size_t n : {1u, 5u, 50u, 400u}) {
    for (double p : {0.5, 0.1, 1.0 / static_cast<double>(n + 1)}) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += 1.0 / (std::pow(1.0 - p, static_cast<double>(i)) * p);
      CHECK(std::abs(leadingones_exact(n, p) - 0.5 * s) <= 1e-10 * 0.5 * s);
    }
  }
}

TEST_CASE("property: LeadingOnes ratio to n^2 (e-1)/2 increases towards 1") {
  double prev = 0.0;
  for (std::size_t n = 10; n <= 1000; n += 10) {
    const double nd = static_cast<double>(n);
    const double ratio = leadingones_exact(n, 1.0 / nd) / (nd * nd * (kE - 1.0) / 2.0);
    CHECK(ratio > prev);
    CHECK(ratio < 1.0);
    prev = ratio;
  }
  CHECK(prev > 0.999);
}

TEST_CASE("OneMax skip bound") {
  CHECK(onemax_skip_bound(10, 10) == 0.0);
  CHECK(onemax_skip_bound(10, 9) == doctest::Approx(0.1 / std::pow(0.9, 8)).epsilon(1e-14));
  CHECK(onemax_skip_bound(10, 9) == doctest::Approx(0.232305).epsilon(1e-6));
  CHECK(onemax_skip_bound(2, 1) == 0.5);
  CHECK(onemax_skip_bound(100, 1) == doctest::Approx(0.99));
  CHECK_THROWS_AS(onemax_skip_bound(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(onemax_skip_bound(10, 0), std::out_of_range);
  CHECK_THROWS_AS(onemax_skip_bound(10, 11), std::out_of_range);
}

TEST_CASE("OneMax skip bound dominates exact skip probabilities at n=50") {
  const std::size_t n = 50;
  for (std::size_t s = 0; s < n; ++s) {
    const auto ch = chain::onemax_level_matrix(n, 1.0 / n, chain::StartMode::fixed(s));
    const auto v = chain::visit_probabilities(ch);
    for (std::size_t i = s + 1; i <= n; ++i) CHECK(1.0 - v[i] <= onemax_skip_bound(n, i) + 1e-12);
  }
}

TEST_CASE("OneMax sandwich") {
  const auto one = onemax_bounds(20, 7, 8);
  CHECK(one.thm_lower == one.tilde_T);
  const auto ch = chain::onemax_level_matrix(20, 1.0 / 20, chain::StartMode::fixed(7));
  CHECK(one.tilde_T == doctest::Approx(1.0 / ch.leave_prob(7)).epsilon(1e-13));

  const auto b = onemax_bounds(10, 8, 10);
  CHECK(b.tilde_T_minus <= b.tilde_T);
  CHECK(b.tilde_T <= b.tilde_T_plus);
  CHECK(b.thm_lower <= b.tilde_T);
  CHECK(b.e_n == e_n_factor(10));

  const auto m = onemax_bounds(100, 50, 100);
  const auto ch100 = chain::onemax_level_matrix(100, 0.01, chain::StartMode::fixed(50));
  const double exact = chain::expected_time_to_reach(ch100, 100)[50];
  CHECK(m.thm_lower <= exact);
  CHECK(exact <= m.tilde_T);

  CHECK_THROWS_AS(onemax_bounds(10, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(onemax_bounds(10, 5, 11), std::invalid_argument);
  CHECK_THROWS_AS(onemax_bounds(1, 0, 1), std::invalid_argument);
}

TEST_CASE("property: OneMax ordering invariants over sampled ranges") {
  for (std::size_t n = 2; n <= 500; n += (n < 40 ? 1 : 37)) {
    for (auto [k, l] : {std::pair<std::size_t, std::size_t>{0, n}, {n / 2, n}, {0, (n + 1) / 2}, {n - 1, n}}) {
      if (!(k < l)) continue;
      CAPTURE(n);
      CAPTURE(k);
      CAPTURE(l);
      const auto b = onemax_bounds(n, k, l);
      CHECK(b.tilde_T_minus <= b.tilde_T * (1 + 1e-12));
      CHECK(b.tilde_T <= b.tilde_T_plus * (1 + 1e-12));
      CHECK(b.thm_lower <= b.tilde_T);
    }
  }
}

TEST_CASE("Jump closed forms") {
  const auto b = jump_bounds(4, 2);
  CHECK(b.p_k == doctest::Approx(9.0 / 256).epsilon(1e-14));
  for (std::size_t n : {5u, 10u, 50u}) {
    CHECK(jump_bounds(n, 2).skip_bound_arbitrary == doctest::Approx(kE / static_cast<double>(n - 1)));
  }
  const auto j = jump_bounds(12, 3);
  const double direct = std::pow(1.0 - 1.0 / 12, 9) * std::pow(12.0, -3);
  CHECK(std::abs(j.p_k - direct) <= 1e-10 * direct);
  CHECK(j.skip_bound_random == doctest::Approx(6 * kE / 4096 + 2 * kE * std::pow(12.0, -2) + 1.0 / 4096));
  CHECK(j.lower_bound_random == doctest::Approx((1 - j.skip_bound_random) / j.p_k));
  CHECK(jump_bounds(4, 4).skip_bound_arbitrary == 1.0);
  CHECK_THROWS_AS(jump_bounds(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(jump_bounds(10, 1), std::invalid_argument);
  CHECK(parse_jump_init("random") == JumpInit::random);
  CHECK_THROWS(parse_jump_init("sideways"));
}

TEST_CASE("Jump random-init skip bound dominates the exact chain at n=12, k=3") {
  const auto jc = chain::jump_level_matrix(12, 3, 1.0 / 12);
  const double q = chain::skip_probability(jc.chain, jc.first_n_level, jc.last_n_level);
  CHECK(q <= jump_bounds(12, 3).skip_bound_random);
}

TEST_CASE("property: Jump lower bounds below exact runtimes") {
  for (std::size_t n = 8; n <= 14; ++n) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const auto b = jump_bounds(n, k);
      const auto rnd = chain::jump_level_matrix(n, k, 1.0 / n);
      CHECK(b.lower_bound_random <= chain::expected_hitting_time(rnd.chain).overall);
      for (std::size_t ones = 0; ones < n; ++ones) {
        const auto fx = chain::jump_level_matrix(n, k, 1.0 / n, chain::StartMode::fixed(ones));
        CHECK(b.lower_bound_arbitrary <= chain::expected_hitting_time(fx.chain).overall);
      }
    }
  }
}

TEST_CASE("long path bounds") {
  const auto clamp = longpath_lower_bound(4, 2, 0.25);
  CHECK(clamp.value == 0.0);
  CHECK(clamp.clamped);
  CHECK(longpath_lower_bound(12, 4, 0.5).value == 0.0);
  CHECK(sudholt_reference_bound(12, 4, 0.5).value == 0.0);
  CHECK(!sudholt_reference_bound(12, 4, 1.0 / 12).proven);
  CHECK(longpath_lower_bound(12, 4, 1.0 / 12).proven);

  // direct evaluation, n=12, k=4, p=1/12: m = 4*8 - 4 = 28
  const double p = 1.0 / 12, m = 28;
  const double direct = m * (1 - 2 * p) / (p * std::pow(1 - p, 12)) * (1 - 2 * p) / (1 - p) *
                        std::pow(1 - m * std::pow(p / (1 - p), 3), m);
  CHECK(longpath_lower_bound(12, 4, p).value == doctest::Approx(direct).epsilon(1e-10));
  const double ref = m * (1 - 2 * p) / (p * std::pow(1 - p, 12)) * (1 - 2 * p) / (1 - p) *
                     std::pow(1 - std::pow(p / (1 - p), 4), m);
  CHECK(sudholt_reference_bound(12, 4, p).value == doctest::Approx(ref).epsilon(1e-10));

  CHECK_THROWS_AS(longpath_lower_bound(12, 5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(longpath_lower_bound(12, 4, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(longpath_lower_bound(12, 1, 0.1), std::invalid_argument);
}

TEST_CASE("long path leaving probability") {
  // k = 2: single term
  CHECK(longpath_leave_prob(10, 2, 0.1) == doctest::Approx(0.1 * std::pow(0.9, 9)).epsilon(1e-13));
  CHECK(longpath_visit_lower(0.5) == 0.0);
  CHECK(longpath_visit_lower(0.1) == doctest::Approx(0.8 / 0.9));
  CHECK(std::isinf(longpath_leave_prob_upper(10, 0.5)));
  for (std::size_t n : {8u, 12u, 30u, 100u}) {
    for (std::size_t k : {2u, 3u, 4u}) {
      for (double p : {0.01, 1.0 / n, 0.2, 0.45}) {
        CHECK(longpath_leave_prob(n, k, p) <= longpath_leave_prob_upper(n, p));
      }
    }
  }
}

TEST_CASE("long path lower bound vs exact chain at n=12, k=4") {
  const LongKPath path(12, 4);
  const auto ch = chain::longpath_level_matrix(path, 1.0 / 12);
  CHECK(longpath_lower_bound(12, 4, 1.0 / 12).value <= chain::expected_hitting_time(ch).overall);
}
