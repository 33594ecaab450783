#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blspec::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;       // bad flags, unparseable system or CSV
inline constexpr int kDegenerate = 3;  // degenerate input, complexity mismatch, no convergence
inline constexpr int kUnsupported = 4; // --exact for a system without closed forms

// Runs the tool on argv-style arguments (args[0] is the program name).
// Data goes to `out` when --out is "-", diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blspec::cli
