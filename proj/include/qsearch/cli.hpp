#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsearch::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitDegenerate = 3;

/// Runs the qsearch command line. args excludes the program name.
/// Reports go to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsearch::cli
