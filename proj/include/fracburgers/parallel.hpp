#pragma once

#include <cstddef>
#include <functional>

namespace fracburgers {

// Worker cap from FRACBURGERS_THREADS (unset or invalid: hardware default).
int worker_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker
// and writes only its own outputs, so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracburgers
