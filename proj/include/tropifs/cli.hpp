#pragma once

#include <iosfwd>

namespace tropifs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 3;

/// tropifs <validate|mane|invariant|fuzzy|demo31> --config <path> --out <dir>
///         [--seed N] [--threads N]
/// Returns 0 on success, 2 on a domain failure, 3 on a usage or config error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tropifs
