#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wdl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point behind the `wdl` binary. `args` excludes the program name.
/// Summaries go to `out`, diagnostics to `err`; CSV output goes only to files.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wdl
