#include "mopls/hypervolume.hpp"

#include "mopls/dominance.hpp"

#include <algorithm>
#include <cmath>

namespace mopls {

namespace {

bool strictly_below(const ObjectiveVector& y, const ReferenceVector& ref)
{
    for (std::size_t j = 0; j < ref.size(); ++j) {
        if (!(y[j] < ref[j])) return false;
    }
    return true;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
    }
    return true;
}

void check_lengths(std::span<const ObjectiveVector> front, const ReferenceVector& ref)
{
    for (const auto& y : front) {
        if (y.size() != ref.size()) {
            throw DimensionError("objective vector and reference vector lengths differ");
        }
    }
}

std::vector<ObjectiveVector> clipped(std::span<const ObjectiveVector> front, const ReferenceVector& ref)
{
    std::vector<ObjectiveVector> out;
    out.reserve(front.size());
    for (const auto& y : front) {
        if (strictly_below(y, ref)) out.push_back(y);
    }
    return out;
}

// Horizontal strip sweep; `pts` already clipped to ref.
double hv_2d(std::vector<std::pair<double, double>>& pts, double ref0, double ref1)
{
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double ceiling = ref1;
    for (const auto& [a, b] : pts) {
        if (b < ceiling) {
            area += (ref0 - a) * (ceiling - b);
            ceiling = b;
        }
    }
    return area;
}

// Slices along the third objective; each slab's cross-section is the 2D
// hypervolume of all points at or below it.
double hv_3d(std::vector<ObjectiveVector> pts, const ReferenceVector& ref)
{
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
    double volume = 0.0;
    std::vector<std::pair<double, double>> slice;
    slice.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        slice.emplace_back(pts[i][0], pts[i][1]);
        const double top = i + 1 < pts.size() ? pts[i + 1][2] : ref[2];
        const double height = top - pts[i][2];
        if (height > 0.0) {
            auto copy = slice;
            volume += hv_2d(copy, ref[0], ref[1]) * height;
        }
    }
    return volume;
}

} // namespace

double hv_exact(std::span<const ObjectiveVector> front, const ReferenceVector& ref)
{
    check_lengths(front, ref);
    const std::size_t k = ref.size();
    if (k > 3) {
        throw UnsupportedDimension("exact hypervolume supports at most 3 objectives; use Monte Carlo");
    }
    auto pts = clipped(front, ref);
    if (pts.empty()) {
        return 0.0;
    }
    switch (k) {
    case 1: {
        double best = ref[0];
        for (const auto& y : pts) best = std::min(best, y[0]);
        return ref[0] - best;
    }
    case 2: {
        std::vector<std::pair<double, double>> flat;
        flat.reserve(pts.size());
        for (const auto& y : pts) flat.emplace_back(y[0], y[1]);
        return hv_2d(flat, ref[0], ref[1]);
    }
    default:
        return hv_3d(std::move(pts), ref);
    }
}

double hv_monte_carlo(std::span<const ObjectiveVector> front, const ReferenceVector& ref,
                      std::size_t samples, RngStream& rng)
{
    check_lengths(front, ref);
    const auto pts = clipped(front, ref);
    if (pts.empty() || samples == 0) {
        return 0.0;
    }
    const std::size_t k = ref.size();
    ObjectiveVector lo = pts.front();
    for (const auto& y : pts) {
        for (std::size_t j = 0; j < k; ++j) lo[j] = std::min(lo[j], y[j]);
    }
    double box = 1.0;
    for (std::size_t j = 0; j < k; ++j) box *= ref[j] - lo[j];

    ObjectiveVector s(k);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t j = 0; j < k; ++j) s[j] = rng.uniform(lo[j], ref[j]);
        if (std::any_of(pts.begin(), pts.end(), [&](const auto& y) { return weakly_dominates(y, s); })) {
            ++hits;
        }
    }
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

std::vector<double> hv_contributions(std::span<const ObjectiveVector> front, const ReferenceVector& ref)
{
    check_lengths(front, ref);
    for (std::size_t i = 0; i < front.size(); ++i) {
        for (std::size_t j = 0; j < front.size(); ++j) {
            if (i != j && dominates(front[j], front[i])) {
                throw ContractViolation("hypervolume contributions need a mutually non-dominated front");
            }
        }
    }
    const double total = hv_exact(front, ref);
    std::vector<double> out(front.size());
    std::vector<ObjectiveVector> rest;
    rest.reserve(front.size());
    for (std::size_t i = 0; i < front.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < front.size(); ++j) {
            if (j != i) rest.push_back(front[j]);
        }
        out[i] = std::max(0.0, total - hv_exact(rest, ref));
    }
    return out;
}

double hv_improvement_exact(std::span<const ObjectiveVector> front, const ObjectiveVector& candidate,
                            const ReferenceVector& ref)
{
    check_lengths(front, ref);
    if (candidate.size() != ref.size()) {
        throw DimensionError("candidate and reference vector lengths differ");
    }
    if (!strictly_below(candidate, ref)) {
        return 0.0;
    }
    for (const auto& y : front) {
        if (weakly_dominates(y, candidate)) return 0.0;
    }
    std::vector<ObjectiveVector> with(front.begin(), front.end());
    const double before = hv_exact(with, ref);
    with.push_back(candidate);
    return std::max(0.0, hv_exact(with, ref) - before);
}

double hv_improvement_monte_carlo(std::span<const ObjectiveVector> front, const ObjectiveVector& candidate,
                                  const ReferenceVector& ref, std::size_t samples, RngStream& rng)
{
    check_lengths(front, ref);
    if (candidate.size() != ref.size()) {
        throw DimensionError("candidate and reference vector lengths differ");
    }
    if (!strictly_below(candidate, ref) || samples == 0) {
        return 0.0;
    }
    for (const auto& y : front) {
        if (weakly_dominates(y, candidate)) return 0.0;
    }
    const std::size_t k = ref.size();
    double box = 1.0;
    for (std::size_t j = 0; j < k; ++j) box *= ref[j] - candidate[j];

    ObjectiveVector s(k);
    std::size_t fresh = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t j = 0; j < k; ++j) s[j] = rng.uniform(candidate[j], ref[j]);
        if (std::none_of(front.begin(), front.end(), [&](const auto& y) { return weakly_dominates(y, s); })) {
            ++fresh;
        }
    }
    return box * static_cast<double>(fresh) / static_cast<double>(samples);
}

double hv_improvement(std::span<const ObjectiveVector> front, const ObjectiveVector& candidate,
                      const ReferenceVector& ref, std::size_t mc_samples, RngStream& rng)
{
    if (ref.size() <= 3) {
        return hv_improvement_exact(front, candidate, ref);
    }
    return hv_improvement_monte_carlo(front, candidate, ref, mc_samples, rng);
}

ReferenceVector running_reference(std::span<const ObjectiveVector> points)
{
    if (points.empty()) {
        throw ContractViolation("reference vector needs at least one point");
    }
    const std::size_t k = points.front().size();
    ObjectiveVector lo = points.front();
    ObjectiveVector hi = points.front();
    for (const auto& y : points) {
        if (y.size() != k) throw DimensionError("objective vectors of different length");
        for (std::size_t j = 0; j < k; ++j) {
            lo[j] = std::min(lo[j], y[j]);
            hi[j] = std::max(hi[j], y[j]);
        }
    }
    ReferenceVector ref(k);
    for (std::size_t j = 0; j < k; ++j) {
        double margin = 0.1 * (hi[j] - lo[j]);
        if (!(margin > 0.0)) margin = 0.1 * std::max(1.0, std::abs(hi[j]));
        ref[j] = hi[j] + margin;
    }
    return ref;
}

} // namespace mopls
