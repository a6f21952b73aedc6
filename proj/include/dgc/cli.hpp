#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dgc {

// Exit codes: 0 ok, 1 validation failure, 2 truncation insufficient,
// 3 parse or schema error, 4 entity not found.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dgc
