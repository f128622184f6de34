#include "mopls/executor.hpp"

#include <cmath>

namespace mopls {

BatchExecutor::BatchExecutor(std::size_t workers) : workers_(workers)
{
    if (workers_ == 0) {
        throw ArgumentError("executor needs at least one worker");
    }
}

BatchResult BatchExecutor::evaluate_batch(std::span<const DecisionVector> points, const ProblemSpec& problem)
{
    if (points.empty()) {
        throw ArgumentError("evaluate_batch needs at least one point");
    }
    BatchResult result;
    result.outputs.resize(points.size());

    const auto start = std::chrono::steady_clock::now();
    run_tasks(points.size(), [&](std::size_t i) {
        try {
            result.outputs[i] = {points[i], problem.evaluate(points[i])};
        } catch (const std::exception& e) {
            throw BatchError(i, "evaluation of batch point " + std::to_string(i) + " failed: " + e.what());
        }
    });
    result.cpu_time = std::chrono::steady_clock::now() - start;

    // With fewer workers than points the batch runs in several rounds.
    const double rounds = std::ceil(static_cast<double>(points.size()) / static_cast<double>(workers_));
    result.simulated_time = problem.eval_delay * rounds;
    result.wall_units = 1;

    ++wall_units_;
    simulated_elapsed_ += result.simulated_time;
    return result;
}

} // namespace mopls
