#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otcli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;

/// Entry point of otsolve. `args` excludes the program name. Results go to
/// `out` (or the files named by flags), diagnostics to `err`.
/// Returns 0 on convergence, 2 when a solver did not converge, 1 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace otcli
