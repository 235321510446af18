#pragma once

#include <exception>
#include <ostream>
#include <string_view>
#include <vector>

#include "cgi/cli/config.hpp"

namespace cgi::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_config = 2;  // bad configuration or input file
inline constexpr int exit_region = 3;  // outside the field region, or at a pole

const std::vector<std::string_view>& command_names();

/// Writes the command's CSV to `out`; throws on failure.
void run_command(std::string_view command, const RunConfig& cfg, std::ostream& out);

/// Exit code for an exception escaping run_command or parse_config.
int exit_code_for(const std::exception& e);

/*
  Runs the command into a buffer and, on success, writes it to cfg.out or to
  `out`. Failures are reported on `err` and mapped to an exit code, so a failed
  run never leaves a partial CSV behind.
*/
int dispatch(std::string_view command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cgi::cli
