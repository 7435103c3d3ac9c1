#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "flm/flm_bounds.hpp"
#include "flm/level_chain.hpp"
#include "oracles.hpp"

using namespace flm;
using namespace flm::bounds;

namespace {

chain::LevelChain to_chain(const oracle::Chain& c) {
  return chain::LevelChain(c.L, oracle::flatten(c.T), c.start);
}

std::vector<double> point_start(std::size_t L, std::size_t at) {
  std::vector<double> s(L, 0.0);
  s[at] = 1.0;
  return s;
}

// gamma with every row uniform over the levels above
std::vector<double> uniform_gamma(std::size_t L) {
  std::vector<double> g(L * L, 0.0);
  for (std::size_t i = 0; i + 1 < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) g[i * L + j] = 1.0 / static_cast<double>(L - 1 - i);
  }
  return g;
}

}  // namespace

TEST_CASE("classic upper") {
  CHECK(flm_upper_classic({0.5, 0.25}).require() == 6.0);
  CHECK(flm_upper_classic({1, 1, 1, 1}).require() == 4.0);
  const auto bad = flm_upper_classic({0.5, 0.0, -1.0});
  CHECK(!bad.valid());
  CHECK(std::isnan(bad.value));
  REQUIRE(bad.violated_preconditions.size() == 2);
  CHECK(bad.violated_preconditions[0].find("p[1]") != std::string::npos);
  CHECK_THROWS_AS(bad.require(), std::domain_error);
  CHECK(flm_upper_classic({0.5}).theorem == "flm-upper-classic");
  CHECK(flm_upper_classic({0.5}).kind == BoundKind::upper);
}

TEST_CASE("classic upper dominates the OneMax chain from level 0") {
  const auto ch = chain::onemax_level_matrix(8, 1.0 / 8, chain::StartMode::fixed(0));
  std::vector<double> p;
  for (std::size_t i = 0; i < 8; ++i) p.push_back(ch.leave_prob(i));
  CHECK(flm_upper_classic(p).require() >= chain::expected_hitting_time(ch).overall);
}

TEST_CASE("classic lower") {
  CHECK(flm_lower_classic({0.25}, {1, 0}).require() == 4.0);
  CHECK(flm_lower_classic({0.25}, {0, 1}).require() == 0.0);
  CHECK(!flm_lower_classic({0.25}, {0.5, 0.4}).valid());
  CHECK(!flm_lower_classic({0.25}, {1, 0, 0}).valid());
}

TEST_CASE("viscosity lower") {
  const std::vector<double> g2 = {0, 1, 0, 0};
  CHECK(flm_lower_viscosity({0.25}, g2, 1.0, {1, 0}).require() == 4.0);
  const std::vector<double> p = {0.5, 0.2, 0.1};
  CHECK(flm_lower_viscosity(p, uniform_gamma(4), 0.0, point_start(4, 0)).require() == 0.0);
  // uniform rows: gamma[0][1] = 1/3 = chi * 1 needs chi <= 1/3
  CHECK(flm_lower_viscosity(p, uniform_gamma(4), 1.0 / 3, point_start(4, 0)).valid());
  const auto bad = flm_lower_viscosity(p, uniform_gamma(4), 0.5, point_start(4, 0));
  CHECK(!bad.valid());
  CHECK(bad.violated_preconditions.front().find("gamma[0][1]") != std::string::npos);
}

TEST_CASE("viscosity upper") {
  const std::vector<double> g2 = {0, 1, 0, 0};
  CHECK(flm_upper_viscosity({0.25}, g2, 1.0, {1, 0}).require() == 4.0);
  CHECK(!flm_upper_viscosity({0.25}, g2, 0.7, {1, 0}).valid());  // gamma[0][1] = 1 needs chi >= 1
  const std::vector<double> p = {0.5, 0.2, 0.1};
  CHECK(flm_upper_viscosity(p, uniform_gamma(4), 1.0, point_start(4, 0)).require() ==
        doctest::Approx(flm_upper_classic(p).require()));
  // (1 - chi) p_0 = 0.25 > p_1 = 0.2
  const auto bad = flm_upper_viscosity(p, uniform_gamma(4), 0.5, point_start(4, 0));
  CHECK(!bad.valid());
}

TEST_CASE("visit bounds") {
  CHECK(flm_lower_visit({0.5, 0.25}, {0.5, 1}).require() == 5.0);
  CHECK(flm_lower_visit({0.5, 0.25}, {0, 0}).require() == 0.0);
  CHECK(flm_upper_visit({0.5, 0.25}, {1, 1}).require() == 6.0);
  CHECK(!flm_lower_visit({0.5, 0.25}, {0.5}).valid());
  CHECK(!flm_upper_visit({0.5, 0.25}, {0.5, 1.2}).valid());
  const std::vector<double> p = {0.9, 0.3, 0.01, 0.77};
  CHECK(flm_upper_visit(p, {1, 1, 1, 1}).require() == flm_upper_classic(p).require());
}

TEST_CASE("property: monotonicity of the visit lower bound") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> p(5), v(5);
    for (auto& x : p) x = u(rng);
    for (auto& x : v) x = u(rng) * 0.9;
    const double base = flm_lower_visit(p, v).require();
    const std::size_t i = rng() % 5;
    auto v2 = v;
    v2[i] += 0.05;
    CHECK(flm_lower_visit(p, v2).require() >= base);
    auto p2 = p;
    p2[i] = std::min(1.0, p2[i] * 1.3);
    CHECK(flm_lower_visit(p2, v).require() <= base);
  }
}

TEST_CASE("visit lower bound from a chain") {
  // every conditional jump lands exactly on the next level half the time
  const std::size_t L = 5;
  oracle::Matrix T(L, std::vector<double>(L, 0.0));
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const double leave = 0.4;
    T[i][i] = 1 - leave;
    const std::size_t above = L - 1 - i;
    if (above == 1) {
      T[i][i + 1] = leave;
      continue;
    }
    T[i][i + 1] = leave / 2;
    for (std::size_t j = i + 2; j < L; ++j) {
      T[i][j] = leave / 2 * std::ldexp(1.0, -static_cast<int>(j - i - 1));
    }
    T[i][L - 1] += leave / 2 * std::ldexp(1.0, -static_cast<int>(L - 2 - i));
  }
  T[L - 1][L - 1] = 1;
  std::vector<double> s = {0.5, 0.25, 0.125, 0.0625, 0.0625};
  const chain::LevelChain ch(L, oracle::flatten(T), s);
  for (std::size_t i = 0; i + 1 < L; ++i) CHECK(visit_lower_from_chain(ch, i) == doctest::Approx(0.5));

  const chain::LevelChain det(3, {0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 1}, {1, 0, 0});
  for (std::size_t i = 0; i < 3; ++i) CHECK(visit_lower_from_chain(det, i) == 1.0);

  const auto om = chain::onemax_level_matrix(20, 1.0 / 20);
  const auto v = chain::visit_probabilities(om);
  for (std::size_t i = 0; i <= 20; ++i) CHECK(visit_lower_from_chain(om, i) <= v[i] + 1e-15);
  CHECK_THROWS_AS(visit_lower_from_chain(om, 21), std::out_of_range);
}

TEST_CASE("property: soundness on random chains") {
  std::mt19937_64 rng(4242);
  int visc_lower_checked = 0, visc_upper_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t L = 2 + rng() % 7;
    const auto oc = oracle::random_chain(L, rng);
    const auto ch = to_chain(oc);
    const double exact = oracle::chain_hitting_time(oc);
    const auto vp = viscosity_from_chain(ch);
    const std::vector<double> start(oc.start.begin(), oc.start.end());
    const double tol = 1e-9 * (1.0 + exact);

    const double lc = flm_lower_classic(vp.leave, start).require();
    const double uc = flm_upper_classic(vp.leave).require();
    CHECK(lc <= exact + tol);
    CHECK(exact <= uc + tol);

    const auto vl = flm_lower_viscosity(vp.leave, vp.gamma, vp.chi_lower, start);
    REQUIRE(vl.valid());
    CHECK(vl.value <= exact + tol);
    ++visc_lower_checked;

    const auto vu = flm_upper_viscosity(vp.leave, vp.gamma, vp.chi_upper, start);
    if (vu.valid()) {
      CHECK(exact <= vu.value + tol);
      CHECK(vu.value <= uc + tol);
      ++visc_upper_checked;
    }

    std::vector<double> v_low, v_exact;
    const auto v = chain::visit_probabilities(ch);
    for (std::size_t i = 0; i + 1 < L; ++i) {
      v_low.push_back(visit_lower_from_chain(ch, i));
      v_exact.push_back(v[i]);
    }
    CHECK(flm_lower_visit(vp.leave, v_low).require() <= exact + tol);
    CHECK(flm_lower_visit(vp.leave, v_exact).require() == doctest::Approx(exact).epsilon(1e-9));
    CHECK(flm_upper_visit(vp.leave, v_exact).require() == doctest::Approx(exact).epsilon(1e-9));
  }
  CHECK(visc_lower_checked == 1000);
  CHECK(visc_upper_checked > 100);
}

TEST_CASE("property: validators reject perturbed gamma rows") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t L = 3 + rng() % 4;
    const auto ch = to_chain(oracle::random_chain(L, rng));
    auto vp = viscosity_from_chain(ch);
    const std::vector<double> start(ch.start().begin(), ch.start().end());
    const std::size_t row = rng() % (L - 1);
    const double delta = (trial % 2 ? 1e-3 : -1e-3);
    vp.gamma[row * L + L - 1] += delta;
    const auto lo = flm_lower_viscosity(vp.leave, vp.gamma, 0.0, start);
    const auto up = flm_upper_viscosity(vp.leave, vp.gamma, 1.0, start);
    CHECK(!lo.valid());
    CHECK(!up.valid());
    bool names_row = false;
    for (const auto& msg : lo.violated_preconditions) {
      names_row = names_row || msg.find("gamma row " + std::to_string(row)) != std::string::npos;
    }
    CHECK(names_row);
  }
}

TEST_CASE("evaluate_all picks the theorems whose inputs are present") {
  FlmInput in;
  in.leave = {0.5, 0.25};
  CHECK(evaluate_all(in).size() == 1);
  in.start = std::vector<double>{1, 0, 0};
  CHECK(evaluate_all(in).size() == 2);
  in.visit = std::vector<double>{1, 0.5};
  CHECK(evaluate_all(in).size() == 4);
  in.gamma = uniform_gamma(3);
  in.chi = 0.5;
  const auto all = evaluate_all(in);
  CHECK(all.size() == 6);
  CHECK(all[4].theorem == "flm-lower-visit");
  CHECK(all[4].value == 4.0);
}
