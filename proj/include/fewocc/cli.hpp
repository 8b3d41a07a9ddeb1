#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fewocc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Exit codes:
/// 0 success or property verified, 1 property violated, 2 usage or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
/// Same, on std::cout / std::cerr.
int run(const std::vector<std::string>& args);

}  // namespace fewocc::cli
