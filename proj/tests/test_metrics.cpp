#include "mopls/metrics.hpp"

#include <doctest.h>

using namespace mopls;

TEST_CASE("coverage endpoints and midpoint")
{
    CHECK(hypervolume_coverage(4.0, 2.0, 4.0) == 1.0);
    CHECK(hypervolume_coverage(2.0, 2.0, 4.0) == 0.0);
    CHECK(hypervolume_coverage(3.0, 2.0, 4.0) == 0.5);
    CHECK(hypervolume_coverage(1.0, 2.0, 4.0) == -0.5);
    CHECK_THROWS_AS(hypervolume_coverage(3.0, 4.0, 4.0), MetricUndefined);
    CHECK_THROWS_AS(hypervolume_coverage(3.0, 5.0, 4.0), MetricUndefined);
}

TEST_CASE("coverage from fronts")
{
    const std::vector<ObjectiveVector> ideal{{0, 1}, {1, 0}};
    const std::vector<ObjectiveVector> initial{{1, 1}};
    const ReferenceVector ref{2, 2};
    CHECK(hypervolume_coverage(ideal, initial, ideal, ref) == 1.0);
    CHECK(hypervolume_coverage(initial, initial, ideal, ref) == 0.0);
}

TEST_CASE("speed-up arithmetic")
{
    CHECK(speedup(400.0, 20.0) == 20.0);
    CHECK(speedup(7.0, 7.0) == 1.0);
    CHECK_THROWS_AS(speedup(0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(speedup(1.0, -1.0), ArgumentError);
}

TEST_CASE("speed-up to a coverage target")
{
    const std::vector<double> base{0.0, 0.2, 0.4, 0.6, 0.8, 0.9};
    const std::vector<double> fast{0.0, 0.5, 0.85, 0.95};
    const auto s = speedup_to_target(base, fast, 0.8);
    REQUIRE(s.speedup);
    CHECK(*s.baseline_time == 4);
    CHECK(*s.target_time == 2);
    CHECK(*s.speedup == 2.0);

    const auto missed = speedup_to_target(base, std::vector<double>{0.0, 0.3, 0.5}, 0.8);
    CHECK_FALSE(missed.speedup);
    CHECK_FALSE(missed.target_time);
    CHECK(missed.max_coverage == 0.5);

    CHECK(first_reaching(base, 0.6) == 3u);
    CHECK_FALSE(first_reaching(base, 0.95));
}

TEST_CASE("mean and median")
{
    CHECK(mean(std::vector<double>{1, 2, 6}) == 3.0);
    CHECK(median({5, 1, 3}) == 3.0);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK_THROWS_AS(median({}), ArgumentError);
    CHECK_THROWS_AS(mean(std::vector<double>{}), ArgumentError);
}
