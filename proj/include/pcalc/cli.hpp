#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcalc::cli {

// Exit codes.
inline constexpr int kSuccess = 0;       // command succeeded / query proven / strong reduction
inline constexpr int kNotProven = 1;     // query not proven / reduction not strong
inline constexpr int kUsageError = 2;    // bad flags, unreadable or malformed input

// Runs one command line (args excludes the program name). The REPL reads
// commands from `in` and writes a prompt only when `interactive` is set.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive = false);

}  // namespace pcalc::cli
