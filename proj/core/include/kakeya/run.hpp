#pragma once

#include "kakeya/config.hpp"

namespace kakeya {

// Executes one command: parses the input file, runs the pipeline, writes
// the JSON report (stdout when no output path) and the optional SVG.
// Exit status: 0 success, 1 verified-property failure (an internal checker
// tripped — a bug signal), 2 input errors (with field diagnostics on
// stderr).
int run(const RunConfig& config);

}  // namespace kakeya
