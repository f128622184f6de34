#pragma once

// Hand-rolled generators and brute-force oracles shared by the tests. The
// oracles are deliberately naive and share no code with the library.

#include "mopls/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testkit {

using Vec = std::vector<double>;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    std::size_t index(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    Vec vec(std::size_t k, double lo = 0.0, double hi = 1.0)
    {
        Vec v(k);
        for (auto& c : v) c = uniform(lo, hi);
        return v;
    }

    /// Integer-valued vectors in [0, levels), so ties and duplicates occur often.
    Vec grid_vec(std::size_t k, int levels)
    {
        Vec v(k);
        for (auto& c : v) c = static_cast<double>(index(0, static_cast<std::size_t>(levels - 1)));
        return v;
    }

    std::vector<Vec> cloud(std::size_t n, std::size_t k, double lo = 0.0, double hi = 1.0)
    {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(vec(k, lo, hi));
        return out;
    }

    /// n points on the anti-diagonal y2 = 1 - y1, a mutually non-dominated set.
    std::vector<Vec> antichain_2d(std::size_t n)
    {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = uniform();
            out.push_back({t, 1.0 - t});
        }
        return out;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline bool dominates_oracle(const Vec& a, const Vec& b)
{
    bool strictly = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strictly = true;
    }
    return strictly;
}

inline std::vector<std::size_t> nondominated_oracle(const std::vector<Vec>& pts, const std::vector<bool>& alive)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!alive[i]) continue;
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
            dominated = alive[j] && dominates_oracle(pts[j], pts[i]);
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

inline std::vector<std::size_t> nondominated_oracle(const std::vector<Vec>& pts)
{
    return nondominated_oracle(pts, std::vector<bool>(pts.size(), true));
}

/// Repeated brute-force peeling.
inline std::vector<std::vector<std::size_t>> fronts_oracle(const std::vector<Vec>& pts)
{
    std::vector<bool> alive(pts.size(), true);
    std::vector<std::vector<std::size_t>> fronts;
    std::size_t left = pts.size();
    while (left > 0) {
        auto f = nondominated_oracle(pts, alive);
        for (auto i : f) alive[i] = false;
        left -= f.size();
        fronts.push_back(std::move(f));
    }
    return fronts;
}

/// Dominated area of a 2D set by inclusion-exclusion over all non-empty
/// subsets: the intersection of boxes [y, ref] is the box [max y, ref].
/// Exponential, so only for tiny sets.
inline double hv_inclusion_exclusion_2d(const std::vector<Vec>& pts, const Vec& ref)
{
    const std::size_t n = pts.size();
    double total = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double lo0 = -INFINITY;
        double lo1 = -INFINITY;
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            ++bits;
            lo0 = std::max(lo0, pts[i][0]);
            lo1 = std::max(lo1, pts[i][1]);
        }
        const double area = std::max(0.0, ref[0] - lo0) * std::max(0.0, ref[1] - lo1);
        total += (bits % 2 == 1 ? 1.0 : -1.0) * area;
    }
    return total;
}

/// Dominated volume by counting cells of the grid induced by all distinct
/// coordinates. Works for any k; cost grows as n^k.
inline double hv_grid(const std::vector<Vec>& pts, const Vec& ref)
{
    const std::size_t k = ref.size();
    std::vector<Vec> live;
    for (const auto& p : pts) {
        bool below = true;
        for (std::size_t j = 0; j < k; ++j) below = below && p[j] < ref[j];
        if (below) live.push_back(p);
    }
    if (live.empty()) return 0.0;
    std::vector<Vec> cuts(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (const auto& p : live) cuts[j].push_back(p[j]);
        cuts[j].push_back(ref[j]);
        std::sort(cuts[j].begin(), cuts[j].end());
        cuts[j].erase(std::unique(cuts[j].begin(), cuts[j].end()), cuts[j].end());
    }
    double total = 0.0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        bool valid = true;
        for (std::size_t j = 0; j < k; ++j) valid = valid && idx[j] + 1 < cuts[j].size();
        if (valid) {
            Vec corner(k);
            double vol = 1.0;
            for (std::size_t j = 0; j < k; ++j) {
                corner[j] = cuts[j][idx[j]];
                vol *= cuts[j][idx[j] + 1] - cuts[j][idx[j]];
            }
            const bool covered = std::any_of(live.begin(), live.end(), [&](const Vec& p) {
                for (std::size_t j = 0; j < k; ++j) {
                    if (p[j] > corner[j]) return false;
                }
                return true;
            });
            if (covered) total += vol;
        }
        std::size_t j = 0;
        while (j < k && ++idx[j] >= cuts[j].size()) idx[j++] = 0;
        if (j == k) break;
    }
    return total;
}

inline double distance(const Vec& a, const Vec& b)
{
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

} // namespace testkit
