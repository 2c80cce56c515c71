#ifndef RIPARIAN_CLI_HPP
#define RIPARIAN_CLI_HPP

#include <ostream>
#include <span>
#include <string>

namespace riparian::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Documents go to
/// `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace riparian::cli

#endif  // RIPARIAN_CLI_HPP
