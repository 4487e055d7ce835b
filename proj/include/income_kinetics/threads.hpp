#pragma once

#include <cstddef>
#include <functional>

namespace ikin {

/// Environment variable capping worker threads.
inline constexpr const char* kThreadsEnv = "INCOME_KINETICS_THREADS";

/// requested > 0 is used as given (still capped by the environment);
/// requested <= 0 means hardware concurrency capped by the environment.
int resolve_thread_count(int requested);

/// Calls body(k) for k in [0, count) on up to `threads` workers. Work items
/// are claimed dynamically, so body must only write to slots owned by k.
/// The first exception thrown by any item is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace ikin
