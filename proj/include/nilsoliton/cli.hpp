#ifndef NILSOLITON_CLI_HPP
#define NILSOLITON_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nilsoliton::cli {

/// Exit codes of the command line front end.
enum ExitCode : int {
  ok = 0,
  malformed = 1,
  invalid = 2,
  not_minimal = 3,
  inconclusive = 4,
};

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// a single-line JSON error object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilsoliton::cli

#endif  // NILSOLITON_CLI_HPP
