#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvflow::cli {

enum ExitCode : int {
  kOk = 0,
  kViolated = 1,
  kNotApplicable = 2,  ///< hypotheses not met, vacuous verdict, or no reversible measure
  kInputError = 3,
};

/// Runs one subcommand. `args` excludes the program name. Results go to `out`
/// (or the -o file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvflow::cli
