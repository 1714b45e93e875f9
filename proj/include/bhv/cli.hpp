#ifndef BHV_CLI_HPP_
#define BHV_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace bhv {

// Exit statuses of the bhvkit command line.
enum ExitStatus : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsageOrLimit = 2,
  kExitEpsilonTooLarge = 3,
  kExitLeafMismatch = 4,
  kExitBadInput = 5,
};

// Runs one bhvkit invocation; `args` excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bhv

#endif  // BHV_CLI_HPP_
