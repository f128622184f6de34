#include "mopls/experiment.hpp"

#include "mopls/dominance.hpp"
#include "mopls/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace mopls {

using nlohmann::json;

namespace {

json params_json(const EngineParams& p)
{
    json j = {
        {"total_evals", p.total_evals},
        {"init_evals", p.init_evals},
        {"population", p.population},
        {"r_init", p.r_init},
        {"prob_cand", p.prob_cand},
        {"prob_hv", p.prob_hv},
        {"c_thresh", p.c_thresh},
        {"c_tenure", p.c_tenure},
        {"n_cand_factor", p.n_cand_factor},
        {"mc_samples", p.mc_samples},
        {"training_cap", p.training_cap},
        {"mutation_sigma", p.mutation_sigma},
    };
    j["wall_budget"] = p.wall_budget ? json(*p.wall_budget) : json(nullptr);
    return j;
}

json point_json(const EvaluatedPoint& p)
{
    return {{"id", p.id}, {"x", p.decision}, {"y", p.objectives}};
}

RecordedPoint point_from_json(const json& j)
{
    return {j.at("id").get<PointId>(), j.at("x").get<DecisionVector>(), j.at("y").get<ObjectiveVector>()};
}

json row_json(const IterationRow& row, const EvaluationArchive& archive, std::optional<double> hc)
{
    json pts = json::array();
    for (PointId id : row.new_ids) pts.push_back(point_json(archive.at(id)));
    return {
        {"type", "iteration"},
        {"iteration", row.iteration},
        {"m", row.m},
        {"centers", row.centers},
        {"new_points", pts},
        {"pareto_ids", row.pareto_ids},
        {"hv", row.hypervolume},
        {"hc", hc ? json(*hc) : json(nullptr)},
        {"tabu_size", row.tabu_size},
        {"radius", {{"min", row.radii.min}, {"median", row.radii.median}, {"max", row.radii.max}}},
    };
}

RecordRow row_from_json(const json& j)
{
    RecordRow row;
    row.iteration = j.at("iteration").get<std::size_t>();
    row.m = j.at("m").get<std::size_t>();
    row.centers = j.at("centers").get<std::vector<PointId>>();
    for (const auto& p : j.at("new_points")) row.new_points.push_back(point_from_json(p));
    row.pareto_ids = j.at("pareto_ids").get<std::vector<PointId>>();
    row.hv = j.at("hv").get<double>();
    if (!j.at("hc").is_null()) row.hc = j.at("hc").get<double>();
    row.tabu_size = j.at("tabu_size").get<std::size_t>();
    const auto& r = j.at("radius");
    row.radii = {r.at("min").get<double>(), r.at("median").get<double>(), r.at("max").get<double>()};
    return row;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

double hv_star_from_union(const std::vector<RunRecord>& records, const ReferenceVector& ref)
{
    std::vector<ObjectiveVector> all;
    for (const auto& r : records) {
        for (const auto& p : r.final_pareto) all.push_back(p.y);
    }
    std::vector<ObjectiveVector> front;
    for (std::size_t i : non_dominated_subset(all)) front.push_back(all[i]);
    return hv_exact(front, ref);
}

} // namespace

std::string to_string(Algorithm a)
{
    return a == Algorithm::mopls ? "mopls" : "random-search";
}

Algorithm parse_algorithm(const std::string& s)
{
    if (s == "mopls") return Algorithm::mopls;
    if (s == "random-search" || s == "random") return Algorithm::random_search;
    throw ArgumentError("unknown algorithm: " + s);
}

void ExperimentConfig::validate() const
{
    if (seeds.empty()) throw ArgumentError("at least one trial seed is required");
    const auto& names = problem_names();
    if (std::find(names.begin(), names.end(), problem) == names.end()) {
        throw ArgumentError("problem not registered: " + problem);
    }
    params.resolved(d);
    if (delay_seconds < 0.0) throw ArgumentError("delay must not be negative");
}

std::string ExperimentConfig::label() const
{
    return to_string(algorithm) + "-" + problem + "-d" + std::to_string(d) + "-N" + std::to_string(params.population);
}

ProblemSpec build_problem(const ExperimentConfig& config)
{
    return expensive_wrapper(make_problem(config.problem, config.d), std::chrono::duration<double>(config.delay_seconds),
                             config.clock);
}

std::optional<double> ideal_hypervolume(const ProblemSpec& problem)
{
    if (!problem.pareto_front_sampler) return std::nullopt;
    const auto front = problem.pareto_front_sampler(kIdealFrontSamples);
    if (front.empty()) return std::nullopt;
    return hv_exact(front, problem.reporting_ref);
}

RunResult run_random_search(const ProblemSpec& problem, const EngineParams& raw_params, std::uint64_t seed,
                            BatchExecutor& executor, const IterationObserver& observer)
{
    const EngineParams params = raw_params.resolved(problem.d);
    RunResult result{EvaluationArchive{}, {}, params};
    auto& archive = result.archive;
    auto emit = [&](IterationRow row) {
        if (observer) observer(row, archive);
        result.rows.push_back(std::move(row));
    };

    RngStream master(seed, 0);
    auto admit = [&](const std::vector<DecisionVector>& xs) {
        const auto batch = executor.evaluate_batch(xs, problem);
        std::vector<PointId> ids;
        for (const auto& [x, y] : batch.outputs) {
            if (!all_finite(y)) throw EvaluationError("random search point evaluated to non-finite objectives");
            ids.push_back(archive.add(x, y, MemoryAttributes{params.r_init, 0, 0}));
        }
        return ids;
    };

    emit(make_row(0, archive, {}, admit(latin_hypercube(params.init_evals, problem.d, master)), problem));
    for (std::size_t iteration = 1; archive.size() < params.total_evals; ++iteration) {
        std::vector<DecisionVector> xs(params.population, DecisionVector(problem.d));
        for (auto& x : xs) {
            for (auto& c : x) c = master.uniform();
        }
        emit(make_row(iteration, archive, {}, admit(xs), problem));
    }
    return result;
}

RunRecord run_trial(const ExperimentConfig& config, std::uint64_t seed, BatchExecutor& executor,
                    const std::filesystem::path& file)
{
    const ProblemSpec problem = build_problem(config);
    const EngineParams params = config.params.resolved(problem.d);

    RunRecord record;
    record.algorithm = to_string(config.algorithm);
    record.problem = problem.key();
    record.seed = seed;
    record.population = params.population;
    record.init_evals = params.init_evals;
    record.total_evals = params.total_evals;
    record.reporting_ref = problem.reporting_ref;
    record.hv_star = ideal_hypervolume(problem);

    std::filesystem::create_directories(file.parent_path().empty() ? "." : file.parent_path());
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw Error("cannot open record file " + file.string());

    json header = {
        {"type", "header"},
        {"schema_version", record.schema_version},
        {"algorithm", record.algorithm},
        {"problem", record.problem},
        {"d", problem.d},
        {"k", problem.k},
        {"seed", seed},
        {"population", record.population},
        {"params", params_json(params)},
        {"delay_seconds", config.delay_seconds},
        {"reporting_ref", record.reporting_ref},
        {"hv_star", record.hv_star ? json(*record.hv_star) : json(nullptr)},
    };
    out << header.dump() << '\n' << std::flush;

    std::optional<double> hv_init;
    auto observer = [&](const IterationRow& row, const EvaluationArchive& archive) {
        if (row.iteration == 0) hv_init = row.hypervolume;
        std::optional<double> hc;
        if (record.hv_star && hv_init && *record.hv_star > *hv_init) {
            hc = hypervolume_coverage(row.hypervolume, *hv_init, *record.hv_star);
        }
        const json j = row_json(row, archive, hc);
        out << j.dump() << '\n' << std::flush;
        record.rows.push_back(row_from_json(j));
    };

    const RunResult result = config.algorithm == Algorithm::mopls
                                 ? run(problem, params, seed, executor, observer)
                                 : run_random_search(problem, params, seed, executor, observer);

    json pareto = json::array();
    for (PointId id : result.archive.pareto_ids()) {
        pareto.push_back(point_json(result.archive.at(id)));
        record.final_pareto.push_back(point_from_json(pareto.back()));
    }
    out << json{{"type", "final"}, {"pareto", pareto}}.dump() << '\n' << std::flush;
    record.complete = true;
    return record;
}

RunRecord load_record(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw Error("cannot open record file " + file.string());
    RunRecord record;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        const auto type = j.at("type").get<std::string>();
        if (type == "header") {
            record.schema_version = j.at("schema_version").get<int>();
            if (record.schema_version != kSchemaVersion) {
                throw Error("unsupported record schema version " + std::to_string(record.schema_version));
            }
            record.algorithm = j.at("algorithm").get<std::string>();
            record.problem = j.at("problem").get<std::string>();
            record.seed = j.at("seed").get<std::uint64_t>();
            record.population = j.at("population").get<std::size_t>();
            record.init_evals = j.at("params").at("init_evals").get<std::size_t>();
            record.total_evals = j.at("params").at("total_evals").get<std::size_t>();
            record.reporting_ref = j.at("reporting_ref").get<ReferenceVector>();
            if (!j.at("hv_star").is_null()) record.hv_star = j.at("hv_star").get<double>();
            saw_header = true;
        } else if (type == "iteration") {
            record.rows.push_back(row_from_json(j));
        } else if (type == "final") {
            for (const auto& p : j.at("pareto")) record.final_pareto.push_back(point_from_json(p));
            record.complete = true;
        }
    }
    if (!saw_header) throw Error("record file has no header: " + file.string());
    return record;
}

std::vector<RunRecord> load_records(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<RunRecord> out;
    for (const auto& f : files) out.push_back(load_record(f));
    return out;
}

std::vector<AggregateRow> aggregate(std::vector<RunRecord> records)
{
    std::erase_if(records, [](const RunRecord& r) { return r.rows.empty(); });
    if (records.empty()) return {};

    std::optional<double> fallback_star;
    for (auto& r : records) {
        if (r.hv_star) continue;
        if (!fallback_star) fallback_star = hv_star_from_union(records, r.reporting_ref);
        r.hv_star = fallback_star;
    }

    std::size_t length = 0;
    for (const auto& r : records) length = std::max(length, r.rows.size());

    std::vector<AggregateRow> out;
    for (std::size_t t = 0; t < length; ++t) {
        std::vector<double> hcs;
        std::vector<double> hvs;
        AggregateRow row;
        row.iteration = t;
        for (const auto& r : records) {
            if (t >= r.rows.size()) continue;
            const double hv0 = r.rows.front().hv;
            hvs.push_back(r.rows[t].hv);
            hcs.push_back(hypervolume_coverage(r.rows[t].hv, hv0, *r.hv_star));
            row.m = r.rows[t].m;
        }
        row.trials = hvs.size();
        row.hc_mean = mean(hcs);
        row.hc_median = median(hcs);
        row.hv_mean = mean(hvs);
        row.hv_median = median(hvs);
        out.push_back(row);
    }
    return out;
}

void write_aggregate_csv(const std::filesystem::path& file, const std::vector<AggregateRow>& rows)
{
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw Error("cannot open " + file.string());
    out << "iteration,m,trials,hc_mean,hc_median,hv_mean,hv_median\n";
    for (const auto& r : rows) {
        out << r.iteration << ',' << r.m << ',' << r.trials << ',' << format_double(r.hc_mean) << ','
            << format_double(r.hc_median) << ',' << format_double(r.hv_mean) << ',' << format_double(r.hv_median)
            << '\n';
    }
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file.string());
    std::string line;
    std::getline(in, line);
    std::vector<AggregateRow> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7) throw Error("malformed aggregate row: " + line);
        out.push_back({std::stoul(cells[0]), std::stoul(cells[1]), std::stoul(cells[2]), std::stod(cells[3]),
                       std::stod(cells[4]), std::stod(cells[5]), std::stod(cells[6])});
    }
    return out;
}

void write_progress_svg(const std::filesystem::path& file, const std::vector<PlotSeries>& series)
{
    constexpr double panel_w = 420.0;
    constexpr double panel_h = 300.0;
    constexpr double margin = 50.0;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    double max_iter = 1.0;
    double max_m = 1.0;
    double lo = 0.0;
    double hi = 1.0;
    for (const auto& s : series) {
        for (const auto& r : s.rows) {
            max_iter = std::max(max_iter, static_cast<double>(r.iteration));
            max_m = std::max(max_m, static_cast<double>(r.m));
            lo = std::min(lo, r.hc_mean);
            hi = std::max(hi, r.hc_mean);
        }
    }

    std::ofstream out(file, std::ios::trunc);
    if (!out) throw Error("cannot open " + file.string());
    const double width = 2.0 * (panel_w + 2.0 * margin);
    const double height = panel_h + 2.0 * margin + 20.0 * static_cast<double>(series.size());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto panel = [&](double x0, const std::string& xlabel, double xmax, bool by_evals) {
        const double left = x0 + margin;
        const double top = margin;
        auto sx = [&](double v) { return left + panel_w * v / xmax; };
        auto sy = [&](double v) { return top + panel_h * (hi - v) / (hi - lo); };
        out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << panel_w << "\" height=\"" << panel_h
            << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t) {
            const double v = lo + (hi - lo) * t / 4.0;
            out << "<text x=\"" << left - 8 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\">"
                << std::setprecision(2) << std::fixed << v << "</text>\n";
            const double xv = xmax * t / 4.0;
            out << "<text x=\"" << sx(xv) << "\" y=\"" << top + panel_h + 16 << "\" text-anchor=\"middle\">"
                << std::setprecision(0) << xv << "</text>\n";
        }
        out.unsetf(std::ios::fixed);
        out << std::setprecision(6);
        out << "<text x=\"" << left + panel_w / 2 << "\" y=\"" << top + panel_h + 34
            << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
        out << "<text x=\"" << left - 38 << "\" y=\"" << top + panel_h / 2 << "\" transform=\"rotate(-90 "
            << left - 38 << ' ' << top + panel_h / 2 << ")\" text-anchor=\"middle\">mean H_c</text>\n";
        for (std::size_t s = 0; s < series.size(); ++s) {
            out << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << palette[s % 6] << "\" points=\"";
            for (const auto& r : series[s].rows) {
                const double xv = by_evals ? static_cast<double>(r.m) : static_cast<double>(r.iteration);
                out << sx(xv) << ',' << sy(r.hc_mean) << ' ';
            }
            out << "\"/>\n";
        }
    };
    panel(0.0, "iterations (wall-clock units)", max_iter, false);
    panel(panel_w + 2.0 * margin, "function evaluations", max_m, true);

    for (std::size_t s = 0; s < series.size(); ++s) {
        const double y = panel_h + 2.0 * margin + 20.0 * static_cast<double>(s);
        out << "<line x1=\"" << margin << "\" y1=\"" << y - 4 << "\" x2=\"" << margin + 24 << "\" y2=\"" << y - 4
            << "\" stroke=\"" << palette[s % 6] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << margin + 30 << "\" y=\"" << y << "\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

ExperimentSummary run_experiment(const ExperimentConfig& config)
{
    config.validate();
    std::filesystem::create_directories(config.out_dir);

    ExperimentSummary summary;
    std::vector<RunRecord> done;
    BatchExecutor executor(config.workers == 0 ? config.params.population : config.workers);
    for (std::uint64_t seed : config.seeds) {
        const auto file = config.out_dir / (config.label() + "-seed" + std::to_string(seed) + ".jsonl");
        try {
            done.push_back(run_trial(config, seed, executor, file));
            summary.records.push_back(file);
        } catch (const std::exception& e) {
            summary.failures.push_back("seed " + std::to_string(seed) + ": " + e.what());
            std::cerr << "warning: trial with seed " << seed << " failed: " << e.what() << '\n';
        }
    }

    const auto rows = aggregate(done);
    summary.aggregate_csv = config.out_dir / (config.label() + "-aggregate.csv");
    write_aggregate_csv(summary.aggregate_csv, rows);
    summary.plot_svg = config.out_dir / (config.label() + "-progress.svg");
    write_progress_svg(summary.plot_svg, {{config.label(), rows}});
    return summary;
}

} // namespace mopls
