#ifndef HURRY_CLI_HPP
#define HURRY_CLI_HPP

#include <iosfwd>

namespace hurry::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

// Runs one subcommand; data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hurry::cli

#endif  // HURRY_CLI_HPP
