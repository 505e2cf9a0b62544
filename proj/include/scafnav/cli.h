#pragma once

#include <iosfwd>

namespace scafnav {

// Exit codes: 0 success, 1 user error (usage, bad input, unknown scaffold,
// I/O), 2 internal error.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace scafnav
