#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace whmf {

// Exit codes: 0 success, 1 a mathematical check failed or an object does not
// exist, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace whmf
