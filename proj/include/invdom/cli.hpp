#pragma once

#include <iosfwd>

namespace invdom {

/// Command-line entry point. Exit codes: 0 ok, 1 tolerance breach, 2 bad
/// input, 3 solver failure, 4 no solution.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invdom
