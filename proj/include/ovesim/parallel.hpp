#pragma once

#include <functional>

namespace ovesim {

/// Number of worker threads: the OVESIM_THREADS environment variable when
/// set and positive, otherwise the hardware concurrency.
int worker_thread_count();

/// Runs fn(0) .. fn(count-1) across worker threads. Callers must make each
/// index independent (own random stream, own output slot); the schedule is
/// then free to vary without changing results.
void parallel_for(long count, const std::function<void(long)>& fn);

}  // namespace ovesim
