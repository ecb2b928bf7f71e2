#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treg {

/// Runs one CLI invocation. Exit codes: 0 all-pass, 1 mathematical
/// counterexample found, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treg
