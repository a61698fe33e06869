#pragma once

#include <iosfwd>

namespace adiwave::cli {

enum ExitCode : int
{
    ok           = 0,
    usage_error  = 2,
    config_error = 3,
    diverged     = 4,
    failure      = 1,
};

/// Runs one of `simulate`, `converge`, `bench`. CSV goes to `out` unless
/// --output names a file; diagnostics go to `err` as a single line.
int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace adiwave::cli
