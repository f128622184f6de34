#pragma once

#include "mopls/problems.hpp"
#include "mopls/types.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace mopls {

struct BatchResult {
    /// (point, objectives) in submission order.
    std::vector<std::pair<DecisionVector, ObjectiveVector>> outputs;
    std::size_t wall_units = 0;
    std::chrono::duration<double> cpu_time{0.0};
    /// Delay charged to the simulated clock for this batch.
    std::chrono::duration<double> simulated_time{0.0};
};

/// Synchronous master-worker executor: every call blocks until all tasks of
/// the batch are done. Tasks are pulled from a shared counter, so any worker
/// count produces the same results as long as tasks are independent.
class BatchExecutor {
public:
    explicit BatchExecutor(std::size_t workers);

    std::size_t workers() const noexcept { return workers_; }

    /// Runs task(i) for i in [0, n). If tasks throw, the exception of the
    /// lowest failing index is rethrown after all threads joined.
    template <class Task>
    void run_tasks(std::size_t n, Task&& task) const;

    /// Evaluates all points and advances the wall clock by one unit.
    BatchResult evaluate_batch(std::span<const DecisionVector> points, const ProblemSpec& problem);

    std::size_t wall_units() const noexcept { return wall_units_; }
    std::chrono::duration<double> simulated_elapsed() const noexcept { return simulated_elapsed_; }

private:
    std::size_t workers_;
    std::size_t wall_units_ = 0;
    std::chrono::duration<double> simulated_elapsed_{0.0};
};

template <class Task>
void BatchExecutor::run_tasks(std::size_t n, Task&& task) const
{
    if (n == 0) {
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;

    auto drain = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    const std::size_t threads = std::min(workers_, n);
    if (threads <= 1) {
        drain();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads - 1);
        for (std::size_t t = 0; t + 1 < threads; ++t) {
            pool.emplace_back(drain);
        }
        drain();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace mopls
