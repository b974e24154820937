#pragma once
// Command-line front end.

#include <iosfwd>
#include <string>
#include <vector>

namespace desiree {

// Exit codes: 0 clean, 1 findings or diagnostics present, 2 usage/IO/parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace desiree
