#pragma once

#include <cstddef>
#include <functional>

namespace fsmac {

// Worker count: explicit request wins, then FSMAC_THREADS, then hardware.
std::size_t thread_budget(std::size_t requested);

// Runs f(i) for i in [0, n); results must be written to caller-owned slots so
// the merge order stays deterministic regardless of scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& f);

}  // namespace fsmac
