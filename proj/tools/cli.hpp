#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace condent::cli {

// Runs one command line (without the program name). Writes JSON to `out`;
// returns 0 on success, 2 on usage or input errors, 1 on internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condent::cli
