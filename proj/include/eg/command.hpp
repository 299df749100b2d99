#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eg {

/// CLI entry point shared by the binary and the tests. Returns the process
/// exit code: 0 success, 1 infeasible-or-violation verdict, 2 usage or input
/// error. Machine-readable error objects go to `err`; reports go to `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace eg
