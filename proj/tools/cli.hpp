#pragma once

#include <iosfwd>

namespace smoothci::cli {

//! Exit codes: 0 success, 2 configuration or input error, 3 statistical
//! precondition violated (e.g. plug-in bandwidth with a zero sample mean),
//! 1 anything unexpected.
enum ExitCode : int
{
  ok = 0,
  internal_error = 1,
  config_error = 2,
  statistical_error = 3
};

//! Entry point of the `smoothci` tool; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smoothci::cli
