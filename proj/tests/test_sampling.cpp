#include "mopls/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace mopls;

namespace {

bool stratified(const std::vector<DecisionVector>& design)
{
    const std::size_t n = design.size();
    const std::size_t d = design.empty() ? 0 : design.front().size();
    for (std::size_t j = 0; j < d; ++j) {
        std::set<std::size_t> strata;
        for (const auto& x : design) {
            if (x[j] < 0.0 || x[j] >= 1.0) return false;
            strata.insert(static_cast<std::size_t>(std::floor(x[j] * static_cast<double>(n))));
        }
        if (strata.size() != n) return false;
    }
    return true;
}

} // namespace

TEST_CASE("streams are reproducible and distinct")
{
    RngStream a(42, 1, 3);
    RngStream b(42, 1, 3);
    RngStream c(42, 2, 3);
    RngStream e(42, 1, 4);
    bool differs_c = false;
    bool differs_e = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.uniform();
        CHECK(va == b.uniform());
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
        differs_c = differs_c || va != c.uniform();
        differs_e = differs_e || va != e.uniform();
    }
    CHECK(differs_c);
    CHECK(differs_e);
}

TEST_CASE("index draws stay in range")
{
    RngStream rng(1, 0);
    for (int i = 0; i < 1000; ++i) CHECK(rng.index(7) < 7);
    CHECK_THROWS_AS(rng.index(0), ArgumentError);
}

TEST_CASE("latin hypercube has one point per stratum")
{
    RngStream rng(9, 0);
    const auto four = latin_hypercube(4, 2, rng);
    CHECK(four.size() == 4);
    CHECK(stratified(four));

    const auto one = latin_hypercube(1, 5, rng);
    REQUIRE(one.size() == 1);
    CHECK(one.front().size() == 5);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RngStream r(seed, 0);
        CHECK(stratified(latin_hypercube(2 * (seed % 12) + 3, 1 + seed % 24, r)));
    }

    RngStream x(77, 0);
    RngStream y(77, 0);
    CHECK(latin_hypercube(18, 8, x) == latin_hypercube(18, 8, y));
}

TEST_CASE("latin hypercube marginals are uniform")
{
    const std::size_t n = 8;
    const std::size_t d = 3;
    std::vector<double> sums(d, 0.0);
    const std::size_t designs = 10000;
    for (std::size_t t = 0; t < designs; ++t) {
        RngStream rng(t, 0);
        for (const auto& x : latin_hypercube(n, d, rng)) {
            for (std::size_t j = 0; j < d; ++j) sums[j] += x[j];
        }
    }
    for (double s : sums) CHECK(std::abs(s / static_cast<double>(designs * n) - 0.5) <= 0.02);
}
