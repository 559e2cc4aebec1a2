#pragma once

#include <string>
#include <vector>

namespace helmscat {

// Entry point of the command-line driver (subcommands synth, invert,
// roundtrip, field, bench).  Returns the process exit code: 0 on success,
// 2 for validation errors, 3 for inversion failures.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args); // args without argv[0]

} // namespace helmscat
