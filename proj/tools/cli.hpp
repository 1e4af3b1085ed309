#pragma once

#include <iosfwd>

namespace unshuffle::cli {

/// Runs the command line. Exit codes: 0 success, 1 the solver or check
/// reported failure, 2 usage or I/O error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cli_main(int argc, const char* const* argv);

}  // namespace unshuffle::cli
