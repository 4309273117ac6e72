#ifndef KRPT_CLI_APP_HPP
#define KRPT_CLI_APP_HPP

/**
 * @file app.hpp
 * @brief The `krpt` command-line driver.
 *
 * Subcommands: simulate, moments, match-width, compare, snapshot.
 * Exit status: 0 on success, 1 when a solver fails, 2 for usage or
 * configuration errors. KRPT_THREADS caps the number of worker threads.
 */

#include <iosfwd>

namespace krpt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolver = 1;
inline constexpr int kExitUsage = 2;

/// Runs the driver; tables go to `out` unless written to files, messages to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace krpt::cli

#endif  // KRPT_CLI_APP_HPP
