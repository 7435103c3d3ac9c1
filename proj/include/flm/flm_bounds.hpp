#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flm/level_chain.hpp"

namespace flm::bounds {

// Equality constraints (gamma row sums) are accepted within this tolerance.
inline constexpr double kPreconditionTolerance = 1e-9;

enum class BoundKind { upper, lower, exact };

std::string_view to_string(BoundKind kind);

struct BoundResult {
  double value = 0.0;  // NaN when preconditions are violated
  BoundKind kind = BoundKind::upper;
  std::string theorem;
  std::vector<std::string> violated_preconditions;
  bool proven = true;  // false for reference values without a known proof

  bool valid() const { return violated_preconditions.empty(); }
  // The value; throws std::domain_error listing the violations otherwise.
  double require() const;
};

// Conventions: levels are 0..L-1 with L-1 the target. `leave` holds one
// entry per non-top level (size L-1), `start` and `visit` hold L and L-1
// entries, gamma is L x L row-major with gamma[i][j] used for j > i only.
struct FlmInput {
  std::vector<double> leave;
  std::optional<std::vector<double>> visit;
  std::optional<std::vector<double>> start;
  std::optional<std::vector<double>> gamma;
  std::optional<double> chi;

  std::size_t levels() const { return leave.size() + 1; }
};

// Every theorem whose inputs are present: classic upper always, classic
// lower with a start distribution, both viscosity bounds with gamma, chi and
// start, and the visit-probability pair with v (p and v taken as exact).
std::vector<BoundResult> evaluate_all(const FlmInput& input);

// sum_i 1/p_i over all non-top levels.
BoundResult flm_upper_classic(const std::vector<double>& leave);

// sum_i start_i / p_i.
BoundResult flm_lower_classic(const std::vector<double>& leave, const std::vector<double>& start);

// sum_i start_i * chi * sum_{j >= i} 1/p_j, valid when every gamma row sums
// to 1 and gamma[i][j] >= chi * sum_{l >= j} gamma[i][l].
BoundResult flm_lower_viscosity(const std::vector<double>& leave, const std::vector<double>& gamma,
                                double chi, const std::vector<double>& start);

// sum_i start_i * (1/p_i + chi * sum_{j > i} 1/p_j), valid when every gamma
// row sums to 1, gamma[i][j] <= chi * sum_{l >= j} gamma[i][l] and
// (1 - chi) p_j <= p_{j+1}.
BoundResult flm_upper_viscosity(const std::vector<double>& leave, const std::vector<double>& gamma,
                                double chi, const std::vector<double>& start);

// sum_i v_i / p_i with p_i upper bounds and v_i lower bounds.
BoundResult flm_lower_visit(const std::vector<double>& leave_upper,
                            const std::vector<double>& visit_lower);

// sum_i v_i / p_i with p_i lower bounds and v_i upper bounds.
BoundResult flm_upper_visit(const std::vector<double>& leave_lower,
                            const std::vector<double>& visit_upper);

// Worst-case conditional probability of landing exactly on level i, given
// that a jump reaches level i or beyond, over all lower levels and over the
// start distribution restricted to levels >= i. 1 when no condition applies.
double visit_lower_from_chain(const chain::LevelChain& chain, std::size_t level);

// Exact (p, gamma) of a chain: p_i = leave prob, gamma[i][j] = T[i][j] / p_i.
struct ViscosityParams {
  std::vector<double> leave;
  std::vector<double> gamma;
  double chi_lower = 1.0;  // largest chi with gamma[i][j] >= chi * tail
  double chi_upper = 0.0;  // smallest chi with gamma[i][j] <= chi * tail
};

ViscosityParams viscosity_from_chain(const chain::LevelChain& chain);

}  // namespace flm::bounds
