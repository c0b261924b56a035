#pragma once

#include <iosfwd>

#include "fockgate/cli/config.hpp"

namespace fockgate::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2 };

/// Each command writes machine-readable files under cfg.out_dir and a short
/// human summary to `log`. Library errors raised by bad inputs surface as
/// exceptions; run_task maps them to exit codes.
int cmd_gate(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_synthesize(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);

/// Dispatches on cfg.task; returns the process exit code.
int run_task(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// One line of the validation suite.
struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool lower_bound = false;  // pass when measured >= bound instead of <=
  bool passed() const { return lower_bound ? measured >= bound : measured <= bound; }
};

std::vector<Check> validation_suite(const RunConfig& cfg);

}  // namespace fockgate::cli
