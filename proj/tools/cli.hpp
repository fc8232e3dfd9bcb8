#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oqa::cli {

// Exit codes: 0 success, 1 a check failed, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oqa::cli
