#pragma once

#include <iosfwd>

namespace ucboost {

/// Command-line entry point: `simulate`, `bench` and `index` subcommands.
/// Returns 0 on success, 2 on a usage or configuration error, 1 on a runtime
/// failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ucboost
