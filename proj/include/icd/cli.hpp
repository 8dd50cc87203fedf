#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace icd {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Entry point of `icd`, minus the program name. Subcommands: gen, run,
// verify, bench.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace icd
