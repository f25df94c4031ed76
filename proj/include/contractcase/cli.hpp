#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contractcase {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2 };

// args excludes the program name. Color follows CONTRACTCASE_COLOR unless
// overridden.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool color);

} // namespace contractcase
