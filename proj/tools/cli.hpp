#pragma once

#include <iosfwd>

namespace fig8::cli {

inline constexpr const char* schema = "fig8-lab/1";

enum exit_code : int { ok = 0, assertion_failed = 1, bad_input = 2, numeric_failure = 3 };

// Parses argv and runs one subcommand.  Data goes to `out` unless --out
// names a file; warnings and errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fig8::cli
