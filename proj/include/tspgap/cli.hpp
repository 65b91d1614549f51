#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tspgap {

/// Exit codes: 0 all checks passed, 1 a check or pipeline failed, 2 usage or
/// input error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `tspgap` command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tspgap
