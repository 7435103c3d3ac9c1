#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flm/experiment.hpp"
#include "flm/flm_bounds.hpp"

namespace flm {

// Slack, in standard errors, allowed before an empirical value contradicts
// a bound.
inline constexpr double kSlackSE = 3.0;

enum class Verdict { pass, fail, info };

std::string_view to_string(Verdict v);

struct ReportRow {
  std::string quantity;
  std::string source;  // theorem or oracle id
  double empirical = 0.0;
  double se = 0.0;
  double theoretical = 0.0;
  Verdict verdict = Verdict::pass;
  std::string note;
};

struct Report {
  std::vector<ReportRow> rows;
  bool failed() const;
};

// Runtime rows: one per bound, plus one for the exact value when given.
// FAIL when mean + 3 SE lies below a lower bound or mean - 3 SE above an
// upper bound (exact values count as both). Unproven bounds and bounds with
// violated preconditions give INFO rows. With timeouts the censored mean
// underestimates E[T], so lower-bound rows degrade to INFO.
// Visit rows: FAIL when v_hat + 3 SE lies below a proven lower bound b, with
// SE = max(plug-in SE, sqrt(b (1 - b) / replicates)).
// `visit_lower` may be shorter than stats.levels but not longer (throws
// std::invalid_argument).
Report compare_report(const RunStatistics& stats, const std::vector<bounds::BoundResult>& bounds,
                      std::optional<double> exact,
                      const std::vector<std::optional<double>>& visit_lower = {},
                      const std::string& exact_source = "oracle");

}  // namespace flm
