#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sidlab::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int { Ok = 0, Failure = 1, Usage = 2, Format = 3 };

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace sidlab::cli
