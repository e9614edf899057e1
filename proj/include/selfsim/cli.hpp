#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfsim {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 ok, 1 usage or parse error, 2 a mathematical check failed,
/// 3 a computation hit an enumeration or state cap.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_check_failed = 2, exit_resource = 3 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selfsim
