#include "flm/rng.hpp"

namespace flm {

Rng make_rng(std::uint64_t seed) { return Rng(seed); }

Rng replicate_stream(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(replicate_seed(master_seed, index));
}

}  // namespace flm
