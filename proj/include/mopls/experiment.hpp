#pragma once

#include "mopls/engine.hpp"
#include "mopls/executor.hpp"
#include "mopls/problems.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mopls {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kIdealFrontSamples = 1000;

enum class Algorithm { mopls, random_search };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct ExperimentConfig {
    std::string problem = "zdt1";
    std::size_t d = 8;
    Algorithm algorithm = Algorithm::mopls;
    EngineParams params;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = "results";
    std::size_t workers = 0;                 // 0 means one per center
    double delay_seconds = 0.0;
    ClockMode clock = ClockMode::simulated;

    std::size_t trials() const noexcept { return seeds.size(); }
    void validate() const;
    /// "<algo>-<problem>-d<d>-N<pop>", used for file names.
    std::string label() const;
};

/// Builds the problem described by the config, wrapped with its delay.
ProblemSpec build_problem(const ExperimentConfig& config);

struct RecordedPoint {
    PointId id = 0;
    DecisionVector x;
    ObjectiveVector y;
};

struct RecordRow {
    std::size_t iteration = 0;
    std::size_t m = 0;
    std::vector<PointId> centers;
    std::vector<RecordedPoint> new_points;
    std::vector<PointId> pareto_ids;
    double hv = 0.0;
    std::optional<double> hc;
    std::size_t tabu_size = 0;
    RadiusSummary radii;
};

/// One trial's persisted trace: a header line, one line per iteration and a
/// closing line with the final Pareto set.
struct RunRecord {
    int schema_version = kSchemaVersion;
    std::string algorithm;
    std::string problem;          // registry key
    std::uint64_t seed = 0;
    std::size_t population = 0;
    std::size_t init_evals = 0;
    std::size_t total_evals = 0;
    ReferenceVector reporting_ref;
    std::optional<double> hv_star;
    std::vector<RecordRow> rows;
    std::vector<RecordedPoint> final_pareto;
    bool complete = false;        // false when the run aborted before the closing line
};

/// Ideal-front hypervolume from the analytic front, if the problem has one.
std::optional<double> ideal_hypervolume(const ProblemSpec& problem);

/// Baseline: the same Latin hypercube start, then batches of N uniform points.
RunResult run_random_search(const ProblemSpec& problem, const EngineParams& params, std::uint64_t seed,
                            BatchExecutor& executor, const IterationObserver& observer = {});

/// Runs one trial and streams its record to `file` line by line.
RunRecord run_trial(const ExperimentConfig& config, std::uint64_t seed, BatchExecutor& executor,
                    const std::filesystem::path& file);

RunRecord load_record(const std::filesystem::path& file);

struct AggregateRow {
    std::size_t iteration = 0;
    std::size_t m = 0;
    std::size_t trials = 0;
    double hc_mean = 0.0;
    double hc_median = 0.0;
    double hv_mean = 0.0;
    double hv_median = 0.0;
};

/// Per-iteration mean and median across trials. Records lacking an ideal
/// hypervolume get one from the non-dominated union of all final fronts.
std::vector<AggregateRow> aggregate(std::vector<RunRecord> records);

void write_aggregate_csv(const std::filesystem::path& file, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& file);

struct PlotSeries {
    std::string label;
    std::vector<AggregateRow> rows;
};

/// Two panels: mean coverage against iterations and against evaluations.
void write_progress_svg(const std::filesystem::path& file, const std::vector<PlotSeries>& series);

struct ExperimentSummary {
    std::vector<std::filesystem::path> records;
    std::filesystem::path aggregate_csv;
    std::filesystem::path plot_svg;
    std::vector<std::string> failures;
};

/// Runs every seed, writes one JSONL record per trial plus the aggregate
/// CSV and the progress plot. Failed trials are reported and skipped.
ExperimentSummary run_experiment(const ExperimentConfig& config);

std::vector<RunRecord> load_records(const std::filesystem::path& dir);

} // namespace mopls
