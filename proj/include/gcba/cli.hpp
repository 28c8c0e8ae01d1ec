#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcba {

/// Runs one gcba_kit request. `args` excludes the program name. Returns 0
/// when a report was computed, 1 for input errors and 2 for consistency
/// failures; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcba
