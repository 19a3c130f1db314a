#ifndef CYCHOM_CLI_HPP
#define CYCHOM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cychom {

// Exit codes: 0 success/pass, 1 check failure, 2 input error,
// 3 guardrail refusal.
int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cychom

#endif  // CYCHOM_CLI_HPP
