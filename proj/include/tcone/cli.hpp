#ifndef TCONE_CLI_HPP
#define TCONE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tcone::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 on a negative mathematical answer, 2 on bad input.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tcone::cli

#endif // TCONE_CLI_HPP
