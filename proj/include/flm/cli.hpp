#pragma once

#include <ostream>

namespace flm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailVerdict = 3;

// Entry point of the flmlab tool. Results go to `out` (or --out FILE),
// diagnostics and usage to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flm
