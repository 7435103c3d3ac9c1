#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "flm/benchmarks.hpp"
#include "flm/bitstring.hpp"
#include "flm/simd/kernels.hpp"

namespace flm::chain {

inline constexpr std::size_t kFullStateMaxN = 14;

struct FullStateOptions {
  std::optional<BitString> start;       // uniform random start when empty
  bool visit_probabilities = false;     // also solve the per-level first-passage systems
  const simd::KernelSet* kernels = nullptr;  // active set when null
};

struct FullStateResult {
  double expected_time = 0.0;
  // Per canonical level of the benchmark: Pr[the level is ever occupied].
  // Empty unless requested.
  std::vector<double> visit_probs;
  // Expected remaining iterations, indexed by the state's bit mask.
  std::vector<double> state_times;
};

// Brute-force oracle over all 2^n search points. Builds the accepted-move
// transition structure of the (1+1) EA with rate p and solves
// (I - Q) t = 1 over the non-optimal states. Elitism makes the system block
// upper triangular when states are ordered by fitness, so it is solved block
// by block (one block per fitness value) with dense elimination.
// Throws std::invalid_argument for n > kFullStateMaxN or p outside (0, 1).
FullStateResult full_state_expected_time(const Benchmark& benchmark, double p,
                                         const FullStateOptions& options = {});

}  // namespace flm::chain
