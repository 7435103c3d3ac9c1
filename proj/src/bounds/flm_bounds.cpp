#include "flm/flm_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace flm::bounds {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kStartTolerance = 1e-12;

std::string idx(std::size_t i) { return std::to_string(i); }

void check_leave(const std::vector<double>& p, std::vector<std::string>& bad) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0 && p[i] <= 1.0)) bad.push_back("p[" + idx(i) + "] not in (0,1]");
  }
}

void check_start(const std::vector<double>& start, std::size_t levels,
                 std::vector<std::string>& bad) {
  if (start.size() != levels) {
    bad.push_back("start has " + idx(start.size()) + " entries, expected " + idx(levels));
    return;
  }
  for (std::size_t i = 0; i < start.size(); ++i) {
    if (!(start[i] >= 0.0 && start[i] <= 1.0)) bad.push_back("start[" + idx(i) + "] not in [0,1]");
  }
  const double total = std::accumulate(start.begin(), start.end(), 0.0);
  if (!(std::abs(total - 1.0) <= kStartTolerance)) bad.push_back("start does not sum to 1");
}

void check_chi(double chi, std::vector<std::string>& bad) {
  if (!(chi >= 0.0 && chi <= 1.0)) bad.push_back("chi not in [0,1]");
}

// gamma[i][j] for j > i, rows i < L-1 summing to 1. Returns false when the
// shape is wrong so callers can skip the entrywise checks.
bool check_gamma_rows(const std::vector<double>& gamma, std::size_t levels,
                      std::vector<std::string>& bad) {
  if (gamma.size() != levels * levels) {
    bad.push_back("gamma must be " + idx(levels) + "x" + idx(levels));
    return false;
  }
  for (std::size_t i = 0; i + 1 < levels; ++i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < levels; ++j) {
      const double g = gamma[i * levels + j];
      if (!(g >= -kPreconditionTolerance)) bad.push_back("gamma[" + idx(i) + "][" + idx(j) + "] negative");
      row += g;
    }
    if (!(std::abs(row - 1.0) <= kPreconditionTolerance)) {
      bad.push_back("gamma row " + idx(i) + " sums to " + std::to_string(row));
    }
  }
  return true;
}

double tail(const std::vector<double>& gamma, std::size_t levels, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t l = j; l < levels; ++l) s += gamma[i * levels + l];
  return s;
}

BoundResult finish(BoundKind kind, std::string theorem, std::vector<std::string> bad,
                   double value) {
  BoundResult r;
  r.kind = kind;
  r.theorem = std::move(theorem);
  r.violated_preconditions = std::move(bad);
  r.value = r.violated_preconditions.empty() ? value : kNaN;
  return r;
}

double inverse_tail_sum(const std::vector<double>& leave, std::size_t from) {
  double s = 0.0;
  for (std::size_t j = from; j < leave.size(); ++j) s += 1.0 / leave[j];
  return s;
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
    case BoundKind::exact: return "exact";
  }
  return "?";
}

double BoundResult::require() const {
  if (valid()) return value;
  std::string msg = theorem + ": violated preconditions:";
  for (const auto& v : violated_preconditions) msg += " [" + v + "]";
  throw std::domain_error(msg);
}

BoundResult flm_upper_classic(const std::vector<double>& leave) {
  std::vector<std::string> bad;
  check_leave(leave, bad);
  return finish(BoundKind::upper, "flm-upper-classic", std::move(bad), inverse_tail_sum(leave, 0));
}

BoundResult flm_lower_classic(const std::vector<double>& leave, const std::vector<double>& start) {
  std::vector<std::string> bad;
  check_leave(leave, bad);
  check_start(start, leave.size() + 1, bad);
  double value = 0.0;
  if (bad.empty()) {
    for (std::size_t i = 0; i < leave.size(); ++i) value += start[i] / leave[i];
  }
  return finish(BoundKind::lower, "flm-lower-classic", std::move(bad), value);
}

BoundResult flm_lower_viscosity(const std::vector<double>& leave, const std::vector<double>& gamma,
                                double chi, const std::vector<double>& start) {
  const std::size_t L = leave.size() + 1;
  std::vector<std::string> bad;
  check_leave(leave, bad);
  check_start(start, L, bad);
  check_chi(chi, bad);
  if (check_gamma_rows(gamma, L, bad)) {
    for (std::size_t i = 0; i + 1 < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j) {
        if (gamma[i * L + j] < chi * tail(gamma, L, i, j) - kPreconditionTolerance) {
          bad.push_back("gamma[" + idx(i) + "][" + idx(j) + "] < chi * tail");
        }
      }
    }
  }
  double value = 0.0;
  if (bad.empty()) {
    for (std::size_t i = 0; i + 1 < L; ++i) value += start[i] * chi * inverse_tail_sum(leave, i);
  }
  return finish(BoundKind::lower, "flm-lower-viscosity", std::move(bad), value);
}

BoundResult flm_upper_viscosity(const std::vector<double>& leave, const std::vector<double>& gamma,
                                double chi, const std::vector<double>& start) {
  const std::size_t L = leave.size() + 1;
  std::vector<std::string> bad;
  check_leave(leave, bad);
  check_start(start, L, bad);
  check_chi(chi, bad);
  if (check_gamma_rows(gamma, L, bad)) {
    for (std::size_t i = 0; i + 1 < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j) {
        if (gamma[i * L + j] > chi * tail(gamma, L, i, j) + kPreconditionTolerance) {
          bad.push_back("gamma[" + idx(i) + "][" + idx(j) + "] > chi * tail");
        }
      }
    }
  }
  for (std::size_t j = 0; j + 1 < leave.size(); ++j) {
    if ((1.0 - chi) * leave[j] > leave[j + 1] + kPreconditionTolerance) {
      bad.push_back("(1-chi) p[" + idx(j) + "] > p[" + idx(j + 1) + "]");
    }
  }
  double value = 0.0;
  if (bad.empty()) {
    for (std::size_t i = 0; i + 1 < L; ++i) {
      value += start[i] * (1.0 / leave[i] + chi * inverse_tail_sum(leave, i + 1));
    }
  }
  return finish(BoundKind::upper, "flm-upper-viscosity", std::move(bad), value);
}

namespace {

BoundResult visit_bound(BoundKind kind, std::string theorem, const std::vector<double>& leave,
                        const std::vector<double>& visit) {
  std::vector<std::string> bad;
  check_leave(leave, bad);
  if (visit.size() != leave.size()) {
    bad.push_back("v has " + idx(visit.size()) + " entries, expected " + idx(leave.size()));
  } else {
    for (std::size_t i = 0; i < visit.size(); ++i) {
      if (!(visit[i] >= 0.0 && visit[i] <= 1.0)) bad.push_back("v[" + idx(i) + "] not in [0,1]");
    }
  }
  double value = 0.0;
  if (bad.empty()) {
    for (std::size_t i = 0; i < leave.size(); ++i) value += visit[i] / leave[i];
  }
  return finish(kind, std::move(theorem), std::move(bad), value);
}

}  // namespace

BoundResult flm_lower_visit(const std::vector<double>& leave_upper,
                            const std::vector<double>& visit_lower) {
  return visit_bound(BoundKind::lower, "flm-lower-visit", leave_upper, visit_lower);
}

BoundResult flm_upper_visit(const std::vector<double>& leave_lower,
                            const std::vector<double>& visit_upper) {
  return visit_bound(BoundKind::upper, "flm-upper-visit", leave_lower, visit_upper);
}

double visit_lower_from_chain(const chain::LevelChain& chain, std::size_t level) {
  const std::size_t L = chain.levels();
  if (level >= L) throw std::out_of_range("visit_lower_from_chain: level out of range");
  double bound = 1.0;
  for (std::size_t j = 0; j < level; ++j) {
    const auto row = chain.row(j);
    const double reach = std::accumulate(row.begin() + static_cast<std::ptrdiff_t>(level), row.end(), 0.0);
    if (reach > 0.0) bound = std::min(bound, row[level] / reach);
  }
  const auto s = chain.start();
  const double reach = std::accumulate(s.begin() + static_cast<std::ptrdiff_t>(level), s.end(), 0.0);
  if (reach > 0.0) bound = std::min(bound, s[level] / reach);
  return bound;
}

ViscosityParams viscosity_from_chain(const chain::LevelChain& chain) {
  const std::size_t L = chain.levels();
  ViscosityParams vp;
  vp.gamma.assign(L * L, 0.0);
  bool any = false;
  vp.chi_lower = 1.0;
  vp.chi_upper = 0.0;
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const double p = chain.leave_prob(i);
    vp.leave.push_back(p);
    if (p <= 0.0) continue;
    for (std::size_t j = i + 1; j < L; ++j) vp.gamma[i * L + j] = chain.at(i, j) / p;
    for (std::size_t j = i + 1; j < L; ++j) {
      const double t = tail(vp.gamma, L, i, j);
      if (t <= 0.0) continue;
      const double ratio = vp.gamma[i * L + j] / t;
      vp.chi_lower = std::min(vp.chi_lower, ratio);
      vp.chi_upper = std::max(vp.chi_upper, ratio);
      any = true;
    }
  }
  if (!any) vp.chi_lower = vp.chi_upper = 1.0;
  return vp;
}

std::vector<BoundResult> evaluate_all(const FlmInput& input) {
  std::vector<BoundResult> out;
  out.push_back(flm_upper_classic(input.leave));
  if (input.start) out.push_back(flm_lower_classic(input.leave, *input.start));
  if (input.start && input.gamma && input.chi) {
    out.push_back(flm_lower_viscosity(input.leave, *input.gamma, *input.chi, *input.start));
    out.push_back(flm_upper_viscosity(input.leave, *input.gamma, *input.chi, *input.start));
  }
  if (input.visit) {
    out.push_back(flm_lower_visit(input.leave, *input.visit));
    out.push_back(flm_upper_visit(input.leave, *input.visit));
  }
  return out;
}

}  // namespace flm::bounds
