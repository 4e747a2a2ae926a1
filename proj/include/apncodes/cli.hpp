#pragma once

#include <ostream>

namespace apncodes {

// Exit codes: 0 success with every comparison matching, 1 a mismatch or a
// violated identity, 2 usage, hypothesis or budget errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apncodes
