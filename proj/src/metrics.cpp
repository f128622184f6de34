#include "mopls/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace mopls {

double hypervolume_coverage(double hv, double hv_init, double hv_star)
{
    const double denom = hv_star - hv_init;
    if (!(denom > 0.0)) {
        throw MetricUndefined("hypervolume coverage undefined: initial design already reaches the ideal front");
    }
    return (hv - hv_init) / denom;
}

double hypervolume_coverage(std::span<const ObjectiveVector> front, std::span<const ObjectiveVector> initial_front,
                            std::span<const ObjectiveVector> ideal_front, const ReferenceVector& ref)
{
    return hypervolume_coverage(hv_exact(front, ref), hv_exact(initial_front, ref), hv_exact(ideal_front, ref));
}

double speedup(double baseline_time, double target_time)
{
    if (!(baseline_time > 0.0) || !(target_time > 0.0)) {
        throw ArgumentError("speed-up needs positive times");
    }
    return baseline_time / target_time;
}

std::optional<std::size_t> first_reaching(std::span<const double> series, double target)
{
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i] >= target) return i;
    }
    return std::nullopt;
}

SpeedupOutcome speedup_to_target(std::span<const double> baseline_coverage, std::span<const double> target_coverage,
                                 double alpha)
{
    SpeedupOutcome out;
    out.baseline_time = first_reaching(baseline_coverage, alpha);
    out.target_time = first_reaching(target_coverage, alpha);
    if (!target_coverage.empty()) {
        out.max_coverage = *std::max_element(target_coverage.begin(), target_coverage.end());
    }
    if (out.baseline_time && out.target_time && *out.baseline_time > 0 && *out.target_time > 0) {
        out.speedup = speedup(static_cast<double>(*out.baseline_time), static_cast<double>(*out.target_time));
    }
    return out;
}

double mean(std::span<const double> values)
{
    if (values.empty()) throw ArgumentError("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::vector<double> values)
{
    if (values.empty()) throw ArgumentError("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace mopls
