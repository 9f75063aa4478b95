#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hpart {

inline constexpr const char* version = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_violated = 1, exit_input_error = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpart
