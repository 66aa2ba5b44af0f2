#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sisres {

// args excludes the program name.  Returns the process exit code:
// 0 ok, 1 mathematical failure, 2 bad usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sisres
