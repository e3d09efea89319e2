#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swarmlife::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation. `args` excludes the program name. Reports go to
// `out` or to the files named by --output; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmlife::cli
