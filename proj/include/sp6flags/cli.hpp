#ifndef SP6FLAGS_CLI_HPP
#define SP6FLAGS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sp6flags {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;           ///< success, all checks passed
inline constexpr int kExitCheckFailed = 1;  ///< ran fine, a verification failed
inline constexpr int kExitParse = 2;        ///< malformed arguments or input text
inline constexpr int kExitPrecondition = 3; ///< valid syntax, rejected input
inline constexpr int kExitInternal = 4;     ///< internal assertion tripped

/// Full command dispatcher: `args` are the program arguments in natural
/// order, without the program name.  The single JSON document goes to `out`,
/// diagnostics to `err`.  Every run is deterministic given (subcommand,
/// inputs, seed).  Exposed separately from main() so tests can drive it
/// in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace sp6flags

#endif
