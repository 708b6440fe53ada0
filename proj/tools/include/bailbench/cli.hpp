#pragma once

#include <iosfwd>

namespace bailbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitConfigError = 2;

// Parses argv and runs one subcommand. Human output goes to `out`, errors and
// usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace bailbench::cli
