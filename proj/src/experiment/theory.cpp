#include "flm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flm/closed_forms.hpp"
#include "flm/full_state.hpp"
#include "flm/level_chain.hpp"

namespace flm {

namespace {

constexpr std::size_t kOneMaxChainCap = 1000;
constexpr std::size_t kJumpChainCap = 2000;
constexpr std::size_t kTheoryFullStateCap = 12;

using bounds::BoundKind;
using bounds::BoundResult;

bool rate_is_one_over_n(const ExperimentConfig& c) {
  return c.rate.per_n && c.rate.value == 1.0;
}

std::vector<double> leave_probs(const chain::LevelChain& ch) {
  std::vector<double> out;
  for (std::size_t i = 0; i < ch.top(); ++i) out.push_back(ch.leave_prob(i));
  return out;
}

std::vector<double> start_vec(const chain::LevelChain& ch) {
  return {ch.start().begin(), ch.start().end()};
}

OracleResult from_chain(const chain::LevelChain& ch, std::string level_kind) {
  OracleResult r;
  r.method = OracleMethod::level_chain;
  r.level_kind = std::move(level_kind);
  r.levels = ch.levels();
  r.leave = leave_probs(ch);
  r.visit = chain::visit_probabilities(ch);
  r.expected_time = chain::expected_hitting_time(ch).overall;
  return r;
}

std::optional<chain::LevelChain> longpath_chain(const ExperimentConfig& c, const InitMode& init,
                                                double p) {
  if (init.is_random()) return std::nullopt;
  const LongKPath path(c.n, c.k);
  if (path.points().size() > 4096) return std::nullopt;
  const auto idx = path.index_of(init.point(c.n));
  if (!idx) return std::nullopt;
  auto ch = chain::longpath_level_matrix(path, p);
  std::vector<double> s(ch.levels(), 0.0);
  s[*idx] = 1.0;
  return ch.with_start(std::move(s));
}

chain::StartMode ones_start(const InitMode& init, std::size_t n) {
  if (init.is_random()) return chain::StartMode::uniform();
  return chain::StartMode::fixed(init.point(n).count_ones());
}

// The FLM theorems evaluated on an exact chain, with the visit lower bound
// taken from the chain's worst-case conditional jump probabilities.
void add_chain_bounds(const chain::LevelChain& ch, std::vector<BoundResult>& out) {
  const auto leave = leave_probs(ch);
  const auto start = start_vec(ch);
  out.push_back(bounds::flm_upper_classic(leave));
  out.push_back(bounds::flm_lower_classic(leave, start));
  std::vector<double> v_lower;
  for (std::size_t i = 0; i < ch.top(); ++i) v_lower.push_back(bounds::visit_lower_from_chain(ch, i));
  out.push_back(bounds::flm_lower_visit(leave, v_lower));
  auto v = chain::visit_probabilities(ch);
  v.pop_back();
  out.push_back(bounds::flm_upper_visit(leave, v));
  const auto vp = bounds::viscosity_from_chain(ch);
  out.push_back(bounds::flm_lower_viscosity(vp.leave, vp.gamma, vp.chi_lower, start));
  out.push_back(bounds::flm_upper_viscosity(vp.leave, vp.gamma, vp.chi_upper, start));
}

BoundResult closed(std::string id, BoundKind kind, double value, bool proven = true) {
  BoundResult b;
  b.theorem = std::move(id);
  b.kind = kind;
  b.value = value;
  b.proven = proven;
  return b;
}

}  // namespace

OracleMethod parse_oracle_method(std::string_view s) {
  if (s == "auto") return OracleMethod::automatic;
  if (s == "level-chain") return OracleMethod::level_chain;
  if (s == "full-state") return OracleMethod::full_state;
  if (s == "closed-form") return OracleMethod::closed_form;
  throw std::invalid_argument("unknown oracle method '" + std::string(s) +
                              "' (auto, level-chain, full-state, closed-form)");
}

std::string_view to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::automatic: return "auto";
    case OracleMethod::level_chain: return "level-chain";
    case OracleMethod::full_state: return "full-state";
    case OracleMethod::closed_form: return "closed-form";
  }
  return "?";
}

OracleResult compute_oracle(const ExperimentConfig& config, OracleMethod method) {
  config.validate();
  const double p = config.mutation_rate();
  const InitMode init = config.effective_init();
  const std::size_t n = config.n;

  if (method == OracleMethod::automatic) {
    switch (config.benchmark) {
      case BenchmarkKind::onemax:
        method = n <= kOneMaxChainCap ? OracleMethod::level_chain : OracleMethod::full_state;
        break;
      case BenchmarkKind::jump:
        method = OracleMethod::level_chain;
        break;
      case BenchmarkKind::leadingones:
        method = init.is_random() ? OracleMethod::closed_form : OracleMethod::full_state;
        break;
      case BenchmarkKind::longpath:
        method = init.is_random() ? OracleMethod::full_state : OracleMethod::level_chain;
        break;
    }
  }

  switch (method) {
    case OracleMethod::level_chain:
      switch (config.benchmark) {
        case BenchmarkKind::onemax:
          return from_chain(chain::onemax_level_matrix(n, p, ones_start(init, n)), "ones");
        case BenchmarkKind::jump: {
          const auto jc = chain::jump_level_matrix(n, config.k, p, ones_start(init, n));
          return from_chain(jc.chain, "ones-class-by-fitness");
        }
        case BenchmarkKind::longpath: {
          const auto ch = longpath_chain(config, init, p);
          if (!ch) throw std::invalid_argument("long path chain needs a start on a path of <= 4096 points");
          return from_chain(*ch, "path-index");
        }
        case BenchmarkKind::leadingones:
          throw std::invalid_argument("no level chain for leadingones; use closed-form or full-state");
      }
      break;
    case OracleMethod::closed_form: {
      if (config.benchmark != BenchmarkKind::leadingones || !init.is_random()) {
        throw std::invalid_argument("closed-form oracle covers leadingones with random init only");
      }
      OracleResult r;
      r.method = OracleMethod::closed_form;
      r.level_kind = "leading-ones";
      r.levels = n + 1;
      for (std::size_t i = 0; i < n; ++i) {
        r.leave.push_back(p * std::exp(static_cast<double>(i) * std::log1p(-p)));
        r.visit.push_back(0.5);
      }
      r.visit.push_back(1.0);
      r.expected_time = bounds::leadingones_exact(n, p);
      return r;
    }
    case OracleMethod::full_state: {
      const auto bench = config.make();
      chain::FullStateOptions opts;
      opts.visit_probabilities = true;
      if (!init.is_random()) opts.start = init.point(n);
      const auto fs = chain::full_state_expected_time(*bench, p, opts);
      OracleResult r;
      r.method = OracleMethod::full_state;
      r.level_kind = "canonical";
      r.levels = bench->level_count();
      r.visit = fs.visit_probs;
      r.expected_time = fs.expected_time;
      return r;
    }
    case OracleMethod::automatic:
      break;
  }
  throw std::logic_error("unreachable oracle method");
}

Theory theory_for(const ExperimentConfig& config) {
  config.validate();
  const double p = config.mutation_rate();
  const InitMode init = config.effective_init();
  const std::size_t n = config.n;
  const auto bench = config.make();
  Theory th;
  th.visit_lower.assign(bench->level_count(), std::nullopt);

  switch (config.benchmark) {
    case BenchmarkKind::onemax: {
      if (n > kOneMaxChainCap) break;
      const auto ch = chain::onemax_level_matrix(n, p, ones_start(init, n));
      th.exact = chain::expected_hitting_time(ch).overall;
      th.exact_source = "level-chain";
      add_chain_bounds(ch, th.runtime_bounds);
      const bool fixed = !init.is_random();
      const std::size_t s = fixed ? init.point(n).count_ones() : 0;
      for (std::size_t i = 0; i < ch.top(); ++i) {
        double lb = bounds::visit_lower_from_chain(ch, i);
        if (fixed && rate_is_one_over_n(config) && n >= 2 && i > s) {
          lb = std::max(lb, 1.0 - bounds::onemax_skip_bound(n, i));
        }
        th.visit_lower[i] = lb;
      }
      if (fixed && rate_is_one_over_n(config) && n >= 2 && s < n) {
        const auto ob = bounds::onemax_bounds(n, s, n);
        th.runtime_bounds.push_back(closed("onemax-lower-sandwich", BoundKind::lower, ob.thm_lower));
        th.runtime_bounds.push_back(closed("onemax-upper-levels", BoundKind::upper, ob.tilde_T));
        th.runtime_bounds.push_back(closed("onemax-upper-harmonic", BoundKind::upper, ob.tilde_T_plus));
      }
      break;
    }
    case BenchmarkKind::leadingones: {
      std::vector<double> leave;
      for (std::size_t i = 0; i < n; ++i) {
        leave.push_back(p * std::exp(static_cast<double>(i) * std::log1p(-p)));
      }
      std::vector<double> start(n + 1, 0.0);
      if (init.is_random()) {
        for (std::size_t i = 0; i < n; ++i) start[i] = std::ldexp(1.0, -static_cast<int>(i + 1));
        start[n] = std::ldexp(1.0, -static_cast<int>(n));
        th.exact = bounds::leadingones_exact(n, p);
        th.exact_source = "closed-form";
        th.runtime_bounds.push_back(
            closed("leadingones-exact", BoundKind::exact, *th.exact));
        th.runtime_bounds.push_back(bounds::flm_lower_visit(leave, std::vector<double>(n, 0.5)));
        for (std::size_t i = 0; i < n; ++i) th.visit_lower[i] = 0.5;
      } else {
        start[init.point(n).leading_ones()] = 1.0;
      }
      th.runtime_bounds.push_back(bounds::flm_upper_classic(leave));
      th.runtime_bounds.push_back(bounds::flm_lower_classic(leave, start));
      break;
    }
    case BenchmarkKind::jump: {
      if (n <= kJumpChainCap) {
        const auto jc = chain::jump_level_matrix(n, config.k, p, ones_start(init, n));
        th.exact = chain::expected_hitting_time(jc.chain).overall;
        th.exact_source = "level-chain";
        add_chain_bounds(jc.chain, th.runtime_bounds);
      }
      const bool optimal_start = !init.is_random() && init.point(n).count_ones() == n;
      if (rate_is_one_over_n(config) && n >= 4 && !optimal_start) {
        const auto jb = bounds::jump_bounds(n, config.k);
        const auto mode = init.is_random() ? bounds::JumpInit::random : bounds::JumpInit::arbitrary;
        th.runtime_bounds.push_back(closed("jump-lower-" + std::string(bounds::to_string(mode)),
                                           BoundKind::lower, jb.lower_bound(mode)));
      }
      break;
    }
    case BenchmarkKind::longpath: {
      if (const auto ch = longpath_chain(config, init, p)) {
        th.exact = chain::expected_hitting_time(*ch).overall;
        th.exact_source = "level-chain";
        add_chain_bounds(*ch, th.runtime_bounds);
      }
      if (init.kind == InitMode::Kind::zero && p <= 0.5) {
        const auto main = bounds::longpath_lower_bound(n, config.k, p);
        const auto ref = bounds::sudholt_reference_bound(n, config.k, p);
        th.runtime_bounds.push_back(closed("longpath-lower", BoundKind::lower, main.value));
        th.runtime_bounds.push_back(
            closed("longpath-reference-unproven", BoundKind::lower, ref.value, false));
      }
      break;
    }
  }

  if (!th.exact && n <= kTheoryFullStateCap) {
    chain::FullStateOptions opts;
    if (!init.is_random()) opts.start = init.point(n);
    th.exact = chain::full_state_expected_time(*bench, p, opts).expected_time;
    th.exact_source = "full-state";
  }
  return th;
}

}  // namespace flm
