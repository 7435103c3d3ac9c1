#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flm/experiment.hpp"
#include "flm/flm_bounds.hpp"

namespace flm {

enum class OracleMethod { automatic, level_chain, full_state, closed_form };

OracleMethod parse_oracle_method(std::string_view s);
std::string_view to_string(OracleMethod m);

// Exact values for one configuration. `leave` is empty when the method has no
// per-level leaving probability (full-state over non-lumpable partitions).
struct OracleResult {
  OracleMethod method = OracleMethod::automatic;
  std::string level_kind;  // what the levels index
  std::size_t levels = 0;
  std::vector<double> leave;
  std::vector<double> visit;
  double expected_time = 0.0;
};

// Throws std::invalid_argument when no exact method applies.
OracleResult compute_oracle(const ExperimentConfig& config,
                            OracleMethod method = OracleMethod::automatic);

// Everything the theory says about one configuration, in the units of a
// simulation: runtime bounds, an exact runtime if one is computable, and
// proven lower bounds on the visit probability of each canonical level.
struct Theory {
  std::vector<bounds::BoundResult> runtime_bounds;
  std::optional<double> exact;
  std::string exact_source;
  std::vector<std::optional<double>> visit_lower;
};

Theory theory_for(const ExperimentConfig& config);

}  // namespace flm
