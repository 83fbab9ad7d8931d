#pragma once

#include <ostream>

namespace levisim::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;      // bad flags, unreadable or invalid config, unwritable output
inline constexpr int kNumericalError = 2;  // planning band violated, grid cap exceeded

/// Runs one subcommand: derive, rates, expand, scan or simulate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levisim::cli
