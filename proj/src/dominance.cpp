#include "mopls/dominance.hpp"

#include <algorithm>
#include <numeric>

namespace mopls {

namespace {

std::size_t common_length(std::span<const ObjectiveVector> points)
{
    if (points.empty()) {
        return 0;
    }
    const std::size_t k = points.front().size();
    for (const auto& p : points) {
        if (p.size() != k) {
            throw DimensionError("objective vectors of different length");
        }
    }
    return k;
}

// O(n log n) sweep for two objectives: after a lexicographic sort, a point is
// dominated iff some strictly smaller (different) vector has f2 <= its f2.
std::vector<std::size_t> non_dominated_2d(std::span<const ObjectiveVector> points)
{
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = points[a];
        const auto& pb = points[b];
        if (pa[0] != pb[0]) return pa[0] < pb[0];
        if (pa[1] != pb[1]) return pa[1] < pb[1];
        return a < b;
    });

    std::vector<std::size_t> out;
    double best_f2 = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const auto& head = points[order[i]];
        while (j < order.size() && points[order[j]] == head) {
            ++j;
        }
        if (!(best_f2 <= head[1])) {
            for (std::size_t t = i; t < j; ++t) {
                out.push_back(order[t]);
            }
        }
        best_f2 = std::min(best_f2, head[1]);
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool dominates(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw DimensionError("dominance check between vectors of different length");
    }
    bool strictly = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) {
            return false;
        }
        if (a[j] < b[j]) {
            strictly = true;
        }
    }
    return strictly;
}

std::vector<std::size_t> non_dominated_subset(std::span<const ObjectiveVector> points)
{
    const std::size_t k = common_length(points);
    if (k == 2) {
        return non_dominated_2d(points);
    }

    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>>
non_dominated_sort(std::span<const ObjectiveVector> points, std::size_t stop_after)
{
    common_length(points);
    const std::size_t n = points.size();

    // Deb's bookkeeping: dominated_by_count[i] counts dominators of i,
    // dominated_set[i] lists the points i dominates.
    std::vector<std::size_t> dominated_by_count(n, 0);
    std::vector<std::vector<std::size_t>> dominated_set(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_set[i].push_back(j);
                ++dominated_by_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_set[j].push_back(i);
                ++dominated_by_count[i];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_by_count[i] == 0) {
            current.push_back(i);
        }
    }

    std::size_t covered = 0;
    while (!current.empty() && covered < stop_after) {
        covered += current.size();
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_set[i]) {
                if (--dominated_by_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

} // namespace mopls
