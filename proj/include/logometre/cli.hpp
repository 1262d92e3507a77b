#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logometre {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line. `args[0]` is the program name. Results go to `out`
/// unless -o is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logometre
