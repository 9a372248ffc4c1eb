#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace symqual::cli {

// args[0] is the program name. Returns 0 on success, 1 on a domain or
// validation error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symqual::cli
