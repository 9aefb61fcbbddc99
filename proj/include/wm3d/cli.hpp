#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wm3d {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitGeometry = 3,
};

/// Runs the command-line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wm3d
