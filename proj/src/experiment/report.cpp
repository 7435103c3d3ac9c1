#include "flm/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flm {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::info: return "INFO";
  }
  return "?";
}

bool Report::failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.verdict == Verdict::fail; });
}

namespace {

Verdict judge(double mean, double se, double value, bool lower, bool upper) {
  if (lower && mean + kSlackSE * se < value) return Verdict::fail;
  if (upper && mean - kSlackSE * se > value) return Verdict::fail;
  return Verdict::pass;
}

}  // namespace

Report compare_report(const RunStatistics& stats, const std::vector<bounds::BoundResult>& bounds,
                      std::optional<double> exact,
                      const std::vector<std::optional<double>>& visit_lower,
                      const std::string& exact_source) {
  if (visit_lower.size() > stats.levels.size()) {
    throw std::invalid_argument("visit bounds cover more levels than the statistics");
  }
  Report rep;
  const bool censored = stats.timeouts > 0;

  if (exact) {
    ReportRow row{"E[T]", exact_source, stats.mean, stats.se, *exact, Verdict::pass, "exact"};
    row.verdict = judge(stats.mean, stats.se, *exact, !censored, true);
    if (censored) row.note = "exact; censored mean";
    rep.rows.push_back(row);
  }
  for (const auto& b : bounds) {
    ReportRow row{"E[T]", b.theorem, stats.mean, stats.se, b.value, Verdict::pass,
                  std::string(bounds::to_string(b.kind))};
    if (!b.valid()) {
      row.verdict = Verdict::info;
      row.note = "preconditions violated";
    } else if (!b.proven) {
      row.verdict = Verdict::info;
      row.note += "; unproven";
    } else {
      const bool lower = b.kind != bounds::BoundKind::upper;
      const bool upper = b.kind != bounds::BoundKind::lower;
      if (lower && !upper && censored) {
        row.verdict = Verdict::info;
        row.note += "; censored mean";
      } else {
        row.verdict = judge(stats.mean, stats.se, b.value, lower && !censored, upper);
      }
    }
    rep.rows.push_back(row);

    // The oracle itself must respect every proven bound.
    if (exact && b.valid() && b.proven) {
      const double tol = 1e-9 * std::max(1.0, std::abs(*exact));
      const bool lower_bad = b.kind != bounds::BoundKind::upper && *exact < b.value - tol;
      const bool upper_bad = b.kind != bounds::BoundKind::lower && *exact > b.value + tol;
      rep.rows.push_back({"exact E[T]", b.theorem, *exact, 0.0, b.value,
                          lower_bad || upper_bad ? Verdict::fail : Verdict::pass,
                          std::string(bounds::to_string(b.kind))});
    }
  }
  for (std::size_t i = 0; i < visit_lower.size(); ++i) {
    if (!visit_lower[i]) continue;
    const auto& ls = stats.levels[i];
    const double b = *visit_lower[i];
    // A frequency of 0 or 1 has zero plug-in SE; fall back to the SE the
    // bound itself implies so that rare levels are not failed on no evidence.
    const double null_se =
        stats.replicates ? std::sqrt(std::clamp(b, 0.0, 1.0) * (1.0 - std::clamp(b, 0.0, 1.0)) /
                                     static_cast<double>(stats.replicates))
                         : 0.0;
    const double se = std::max(ls.visit_se, null_se);
    ReportRow row{"v[" + std::to_string(i) + "]", "visit-lower", ls.visit_freq, se, b, Verdict::pass, "lower"};
    if (se > ls.visit_se) row.note += "; se under bound";
    if (ls.visit_freq + kSlackSE * se < b) row.verdict = Verdict::fail;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace flm
