#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace soliton {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_not_exact = 2,
    exit_structural = 3,
    exit_check_failed = 4,
};

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// SOLITON_FIXTURES, falling back to the build-time default
std::string fixtures_dir();

} // namespace soliton
