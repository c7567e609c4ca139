#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fsum::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on pass, 1 when a checked property fails and 2 for
/// usage or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsum::cli
