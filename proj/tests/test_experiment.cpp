#include "mopls/dominance.hpp"
#include "mopls/experiment.hpp"
#include "mopls/metrics.hpp"

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace mopls;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("mopls-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ExperimentConfig small_config(const fs::path& out)
{
    ExperimentConfig c;
    c.problem = "zdt1";
    c.d = 4;
    c.params.population = 3;
    c.params.total_evals = 46;
    c.params.n_cand_factor = 40;
    c.seeds = {0, 1, 2};
    c.out_dir = out;
    return c;
}

} // namespace

TEST_CASE("config validation and labels")
{
    ExperimentConfig c;
    c.seeds = {1};
    CHECK_NOTHROW(c.validate());
    CHECK(c.label() == "mopls-zdt1-d8-N4");
    c.algorithm = Algorithm::random_search;
    CHECK(c.label() == "random-search-zdt1-d8-N4");
    c.seeds.clear();
    CHECK_THROWS_AS(c.validate(), ArgumentError);
    c.seeds = {1};
    c.problem = "nope";
    CHECK_THROWS_AS(c.validate(), ArgumentError);
    CHECK(parse_algorithm("mopls") == Algorithm::mopls);
    CHECK(parse_algorithm("random-search") == Algorithm::random_search);
    CHECK_THROWS_AS(parse_algorithm("parego"), ArgumentError);
}

TEST_CASE("records round-trip and coverage is recomputable from stored fronts")
{
    const auto dir = scratch("roundtrip");
    const auto config = small_config(dir);
    BatchExecutor exec(3);
    const auto file = dir / "trial.jsonl";
    const auto record = run_trial(config, 7, exec, file);
    const auto loaded = load_record(file);

    CHECK(loaded.complete);
    CHECK(loaded.seed == 7);
    CHECK(loaded.problem == "zdt1-d4");
    CHECK(loaded.algorithm == "mopls");
    CHECK(loaded.rows.size() == record.rows.size());
    CHECK(loaded.rows.size() == 1 + (46 - 10) / 3);
    REQUIRE(loaded.hv_star);

    // Rebuild every front from the stored points and recompute hypervolume and coverage.
    std::map<PointId, ObjectiveVector> seen;
    double hv0 = 0.0;
    for (std::size_t t = 0; t < loaded.rows.size(); ++t) {
        const auto& row = loaded.rows[t];
        for (const auto& p : row.new_points) seen[p.id] = p.y;
        CHECK(row.m == seen.size());
        if (t > 0) CHECK(row.m == loaded.rows[t - 1].m + 3);
        std::vector<ObjectiveVector> all;
        for (const auto& [id, y] : seen) all.push_back(y);
        std::vector<PointId> expected_ids;
        for (auto i : non_dominated_subset(all)) expected_ids.push_back(i);
        CHECK(row.pareto_ids == expected_ids);

        std::vector<ObjectiveVector> front;
        for (auto id : row.pareto_ids) front.push_back(seen.at(id));
        const double hv = hv_exact(front, loaded.reporting_ref);
        CHECK(std::abs(hv - row.hv) <= 1e-9);
        if (t == 0) hv0 = hv;
        REQUIRE(row.hc);
        CHECK(std::abs(*row.hc - (hv - hv0) / (*loaded.hv_star - hv0)) <= 1e-9);
        if (t > 0) CHECK(row.hv >= loaded.rows[t - 1].hv);
    }
    REQUIRE(!loaded.final_pareto.empty());
    for (const auto& p : loaded.final_pareto) CHECK(seen.at(p.id) == p.y);
}

TEST_CASE("reruns are byte-identical for any worker count")
{
    const auto dir = scratch("bytes");
    const auto config = small_config(dir);
    BatchExecutor one(1);
    BatchExecutor three(3);
    run_trial(config, 4, one, dir / "a.jsonl");
    run_trial(config, 4, three, dir / "b.jsonl");
    run_trial(config, 5, three, dir / "c.jsonl");
    CHECK(slurp(dir / "a.jsonl") == slurp(dir / "b.jsonl"));
    CHECK(slurp(dir / "a.jsonl") != slurp(dir / "c.jsonl"));
}

TEST_CASE("experiment writes one record per trial, an aggregate and a plot")
{
    const auto dir = scratch("experiment");
    const auto config = small_config(dir);
    const auto summary = run_experiment(config);
    CHECK(summary.failures.empty());
    CHECK(summary.records.size() == 3);
    for (const auto& f : summary.records) CHECK(fs::exists(f));
    CHECK(fs::exists(summary.aggregate_csv));
    CHECK(fs::exists(summary.plot_svg));
    CHECK(slurp(summary.plot_svg).find("<svg") == 0);

    // The aggregate is a pure fold over the raw files.
    const auto records = load_records(dir);
    REQUIRE(records.size() == 3);
    const auto rows = read_aggregate_csv(summary.aggregate_csv);
    REQUIRE(rows.size() == records.front().rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        std::vector<double> hcs;
        for (const auto& r : records) hcs.push_back(*r.rows[t].hc);
        std::sort(hcs.begin(), hcs.end());
        CHECK(rows[t].trials == 3);
        CHECK(std::abs(rows[t].hc_median - hcs[1]) <= 1e-12);
        CHECK(std::abs(rows[t].hc_mean - (hcs[0] + hcs[1] + hcs[2]) / 3.0) <= 1e-12);
    }
    const auto again = aggregate(records);
    CHECK(again.size() == rows.size());
    CHECK(std::abs(again.back().hv_median - rows.back().hv_median) <= 1e-12);

    // Speed-ups computed from the CSV equal those computed from the records.
    std::vector<double> from_csv;
    std::vector<double> from_records;
    for (const auto& r : rows) from_csv.push_back(r.hc_mean);
    for (const auto& r : again) from_records.push_back(r.hc_mean);
    const auto a = speedup_to_target(from_csv, from_csv, 0.5);
    const auto b = speedup_to_target(from_records, from_records, 0.5);
    CHECK(a.target_time == b.target_time);
}

TEST_CASE("a failed trial is reported and the rest are aggregated")
{
    const auto dir = scratch("partial");
    auto config = small_config(dir);
    // A directory where the second record file should go makes that trial fail.
    fs::create_directories(dir / (config.label() + "-seed1.jsonl"));
    const auto summary = run_experiment(config);
    CHECK(summary.failures.size() == 1);
    CHECK(summary.records.size() == 2);
    CHECK(read_aggregate_csv(summary.aggregate_csv).front().trials == 2);
}

TEST_CASE("random search shares the record schema")
{
    const auto dir = scratch("random");
    auto config = small_config(dir);
    config.algorithm = Algorithm::random_search;
    const auto summary = run_experiment(config);
    REQUIRE(summary.records.size() == 3);
    const auto r = load_record(summary.records.front());
    CHECK(r.algorithm == "random-search");
    CHECK(r.rows.size() == 13);
    CHECK(r.rows.back().m == 46);
    CHECK(r.rows.back().centers.empty());
}

TEST_CASE("aggregation falls back to the union of final fronts")
{
    const auto dir = scratch("union");
    const auto config = small_config(dir);
    run_experiment(config);
    auto records = load_records(dir);
    for (auto& r : records) r.hv_star.reset();
    const auto rows = aggregate(records);
    REQUIRE(!rows.empty());
    // The best trial reaches the union front only if it found all of it.
    CHECK(rows.back().hc_mean <= 1.0 + 1e-12);
    CHECK(rows.front().hc_mean == 0.0);
}
