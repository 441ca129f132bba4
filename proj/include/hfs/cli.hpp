#pragma once

#include <iosfwd>

namespace hfs {

// Parses argv, runs one subcommand, and writes the serialized result to
// `out` (diagnostics to `err`).  Exit codes: 0 success, 1 failed self-check
// (`verify`), 2 input error, 3 cap exceeded, 4 internal invariant failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hfs
