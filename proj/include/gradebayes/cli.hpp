#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gradebayes {

/// Process exit codes. Every command path maps to exactly one code.
enum class ExitStatus : int {
  ok = 0,          // success
  validation = 1,  // domain/validation failure in data or arguments
  usage = 2,       // unknown subcommand/flag or bad flag value
  io = 3,          // I/O failure or malformed file
};

/// Runs one CLI invocation. `args` excludes the program name. Data output
/// goes to `out` (or the subcommand's --out file); diagnostics go to `err`;
/// `in` is reserved. Returns the exit code. Identical args plus identical
/// input files produce byte-identical output.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace gradebayes
