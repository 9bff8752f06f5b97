#pragma once

#include <ostream>

#include "run_config.hpp"

namespace eqstop::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNonConvergence = 2, kValidationFailed = 3 };

int cmd_constants(const RunConfig& cfg, std::ostream& os);
int cmd_iterate(const RunConfig& cfg, std::ostream& os);
int cmd_boundary(const RunConfig& cfg, std::ostream& os);
int cmd_classify(const RunConfig& cfg, std::ostream& os);
int cmd_validate(const RunConfig& cfg, std::ostream& os);
int cmd_smoking(const RunConfig& cfg, std::ostream& os);

// Validates cfg, runs cfg.command writing to cfg.out (or os when empty) and
// maps library errors to exit codes.
int run(const RunConfig& cfg, std::ostream& os, std::ostream& err);

}  // namespace eqstop::cli
