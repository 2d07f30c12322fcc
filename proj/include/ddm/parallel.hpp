#pragma once

#include <cstddef>
#include <functional>

namespace ddm {

/// Worker count for sweeps: DD_METROLOGY_THREADS if set and positive,
/// otherwise std::thread::hardware_concurrency().
unsigned sweep_thread_count();

/// Runs body(i) for i in [0, count) on up to sweep_thread_count() threads.
/// If any call throws, the exception from the lowest index is rethrown after
/// all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace ddm
