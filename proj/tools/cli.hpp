#ifndef LRD_TOOLS_CLI_HPP
#define LRD_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lrd::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out`; diagnostics go to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrd::cli

#endif  // LRD_TOOLS_CLI_HPP
