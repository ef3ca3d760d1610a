#ifndef CUBIC_CLI_HPP
#define CUBIC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cubic {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComparison = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the cubiccensus tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubic

#endif
