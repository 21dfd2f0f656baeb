#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sieve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;

/// Runs the artifact-sieve command line. `args` excludes the program name.
/// Machine-readable results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sieve::cli
