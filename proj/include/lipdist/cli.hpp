#pragma once

#include <iosfwd>

namespace lipdist::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,        // success, or an exact distance
  kInvalid = 1,   // bad usage, unreadable or invalid input, failed experiment check
  kBracketed = 2, // budget ran out; only a bracket is known
  kInfinite = 3,  // spaces of different sizes
};

/// Entry point of the `lipdist` tool with injectable streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lipdist::cli
