// cli.hpp — command-line front end (generate / curve / recover / verify).
#pragma once

namespace qwmaze {

// Exit codes: 0 success, 1 usage or input error, 2 verification failure.
int run_cli(int argc, const char* const* argv);

}  // namespace qwmaze
