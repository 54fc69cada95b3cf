#ifndef GRADALG_CLI_HPP
#define GRADALG_CLI_HPP

#include <ostream>

namespace gradalg {

/// Subcommands build, analyze, enumerate, search and verify.  Returns 0 on
/// success, 2 when verify reports a failing clause and 1 on errors.
int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace gradalg

#endif // GRADALG_CLI_HPP
