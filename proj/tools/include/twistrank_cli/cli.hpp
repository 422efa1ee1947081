#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twistrank::cli {

/// Exit codes of every command.
enum Exit : int { ok = 0, check_failed = 1, usage = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count from TWISTRANK_THREADS, default 1.
unsigned default_threads();

}  // namespace twistrank::cli
