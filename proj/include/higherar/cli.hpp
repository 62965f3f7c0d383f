#pragma once

// Batch front end shared by the `higherar` tool and the acceptance suite.
//
// Exit codes: 0 verified, 1 property failed (witness in the report),
// 2 input or parse error, 3 inconclusive (randomized budget exhausted).

#include <iosfwd>
#include <string>
#include <vector>

namespace higherar {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInconclusive = 3;

/// `args` excludes the program name. The seed falls back to HIGHERAR_SEED, then 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace higherar
