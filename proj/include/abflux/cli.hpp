#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abflux::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerical = 3;

// Parse args (without the program name), compute, and write the artifact to the
// --output file or to out. Diagnostics go to err. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal that parses back to the same double.
std::string format_number(double v);

} // namespace abflux::cli
