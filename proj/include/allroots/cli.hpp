#pragma once

#include "allroots/run_config.hpp"

#include <ostream>

namespace allroots {

/// Exit codes shared by run() and run_cli().
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_io_error = 3 };

/// Solves `cfg` (repetitions times), writes the solutions to cfg.output_path
/// or `out`, and dumps contours when configured. Errors are reported on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Command-line entry point: solve | bench | sweep | contours.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace allroots
