#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpfact::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Artifacts go to
/// the paths named by --out ("-" writes to `out`); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpfact::cli
