#pragma once

#include "mopls/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mopls {

/// A seeded random stream. Streams are addressed by (seed, stream_id,
/// substream); the master uses stream 0 and worker i uses stream i + 1.
/// Equal addresses reproduce equal draws.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream = 0);

    double uniform();                        // [0,1)
    double uniform(double lo, double hi);
    double normal(double mean, double stddev);
    std::size_t index(std::size_t n);        // uniform in [0, n)

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Plain Latin hypercube design: n points in [0,1]^d, one per stratum
/// [j/n, (j+1)/n) in every dimension.
std::vector<DecisionVector> latin_hypercube(std::size_t n, std::size_t d, RngStream& rng);

} // namespace mopls
