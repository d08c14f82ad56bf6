#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace forman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Results go to `out`,
// diagnostics (one line per failure) to `err`.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_run(int argc, char** argv);

}  // namespace forman::cli
