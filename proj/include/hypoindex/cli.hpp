#pragma once

#include <ostream>
#include <span>
#include <string>

namespace hypoindex::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kFileNotFound = 3,
    kValidationFailed = 4,
    kNumericError = 5,
};

/// Runs one command. `args` excludes the program name. Human-readable output
/// goes to `out`, diagnostics to `err`; a JSON report is written when
/// --report is given. Identical inputs give byte-identical output.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// SHA-256 of the concatenated input contents, hex encoded.
std::string digest(std::span<const std::string> contents);

}  // namespace hypoindex::cli
