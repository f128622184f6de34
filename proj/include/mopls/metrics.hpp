#pragma once

#include "mopls/hypervolume.hpp"
#include "mopls/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mopls {

/// (hv - hv_init) / (hv_star - hv_init). Throws MetricUndefined when the
/// initial design already reaches the ideal hypervolume.
double hypervolume_coverage(double hv, double hv_init, double hv_star);

double hypervolume_coverage(std::span<const ObjectiveVector> front, std::span<const ObjectiveVector> initial_front,
                            std::span<const ObjectiveVector> ideal_front, const ReferenceVector& ref);

/// Ratio of the serial baseline's time to the algorithm's time for the same target.
double speedup(double baseline_time, double target_time);

/// First index whose value reaches `target`, if any.
std::optional<std::size_t> first_reaching(std::span<const double> series, double target);

struct SpeedupOutcome {
    std::optional<double> speedup;        // empty when the target was not reached
    std::optional<std::size_t> baseline_time;
    std::optional<std::size_t> target_time;
    double max_coverage = 0.0;            // best value the target series attained
};

/// Times are row indices (iterations) at which each coverage series first
/// reaches `alpha`.
SpeedupOutcome speedup_to_target(std::span<const double> baseline_coverage,
                                 std::span<const double> target_coverage, double alpha);

double mean(std::span<const double> values);
double median(std::vector<double> values);

} // namespace mopls
