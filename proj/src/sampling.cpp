#include "mopls/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mopls {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32),
                      0x6d6f706cU};
    engine_.seed(seq);
}

double RngStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

double RngStream::normal(double mean, double stddev)
{
    return std::normal_distribution<double>(mean, stddev)(engine_);
}

std::size_t RngStream::index(std::size_t n)
{
    if (n == 0) throw ArgumentError("index range must be non-empty");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::vector<DecisionVector> latin_hypercube(std::size_t n, std::size_t d, RngStream& rng)
{
    if (n == 0 || d == 0) {
        throw DimensionError("latin hypercube needs n >= 1 and d >= 1");
    }
    std::vector<DecisionVector> design(n, DecisionVector(d));
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        for (std::size_t i = 0; i < n; ++i) {
            const double v = (static_cast<double>(perm[i]) + rng.uniform()) / static_cast<double>(n);
            // guard against rounding up into the next stratum
            design[i][j] = std::min(v, std::nextafter((static_cast<double>(perm[i]) + 1.0) / n, 0.0));
        }
    }
    return design;
}

} // namespace mopls
