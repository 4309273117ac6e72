#ifndef KRPT_CORE_PARALLEL_HPP
#define KRPT_CORE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace krpt {

/// min(jobs, KRPT_THREADS or the hardware concurrency), at least 1.
std::size_t worker_count(std::size_t jobs);

/// Runs job(i) for every i in [0, n) on worker_count(n) threads; rethrows the first failure.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job);

}  // namespace krpt

#endif  // KRPT_CORE_PARALLEL_HPP
