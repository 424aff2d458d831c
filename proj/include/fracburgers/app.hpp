#pragma once

#include <ostream>

#include "fracburgers/config.hpp"

namespace fracburgers {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;     // bad flags, config, input data, I/O
inline constexpr int kExitRuntime = 3;   // blowup, positivity loss, kernel errors

// Initial data from the samples file or the named profile.
Field initial_data(const RunConfig& cfg);

// Runs one command and writes its outputs under cfg.out. Library errors
// propagate; the return value is kExitPass or kExitVerificationFailed.
int run_command(const RunConfig& cfg, std::ostream& log);

// Full entry point: parsing, dispatch, and exception-to-exit-code mapping.
int run_main(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace fracburgers
