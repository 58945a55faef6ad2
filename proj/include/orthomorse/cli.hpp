#pragma once

#include <iosfwd>

namespace orthomorse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Parse argv and run one subcommand, writing results to `out` and
/// diagnostics to `err`. Returns 0 on success, 1 on malformed flags or input
/// files, 2 when a numerical validation fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orthomorse::cli
