#pragma once

#include <string>

#include "tracekit/cli/config.hpp"
#include "tracekit/cli/report.hpp"

namespace tracekit::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kConfigError = 2 };

struct RunOutcome {
    RunReport report;
    int exit_code = kSuccess;
    std::string diagnostic;
};

/// Executes the scenario. Engine errors caused by configuration values map to
/// kConfigError, numerical failures to kCheckFailed.
RunOutcome run(const RunConfig& cfg);

/// Writes report.json, timings.json and the tables into cfg.out_dir.
void write_outputs(const RunConfig& cfg, const RunReport& report);

}  // namespace tracekit::cli
