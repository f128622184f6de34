// Command-line front end: run experiments, aggregate records, plot, and
// compute speed-ups from stored records.

#include "mopls/experiment.hpp"
#include "mopls/metrics.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <map>

namespace {

struct RunOptions {
    std::string problem = "zdt1";
    std::size_t dim = 8;
    std::string algo = "mopls";
    std::size_t pop = 4;
    std::size_t budget = 400;
    std::size_t init = 0;
    std::size_t wall_budget = 0;
    std::size_t trials = 10;
    std::uint64_t seed_base = 0;
    std::string out = "results";
    std::size_t workers = 0;
    double delay = 0.0;
    bool real_clock = false;
    double r_init = 0.2;
    double prob_cand = 0.9;
    double prob_hv = 0.65;
    int c_thresh = 3;
    int c_tenure = 5;
};

mopls::ExperimentConfig to_config(const RunOptions& o)
{
    mopls::ExperimentConfig c;
    c.problem = o.problem;
    c.d = o.dim;
    c.algorithm = mopls::parse_algorithm(o.algo);
    c.params.population = o.pop;
    c.params.total_evals = o.budget;
    c.params.init_evals = o.init;
    if (o.wall_budget > 0) c.params.wall_budget = o.wall_budget;
    c.params.r_init = o.r_init;
    c.params.prob_cand = o.prob_cand;
    c.params.prob_hv = o.prob_hv;
    c.params.c_thresh = o.c_thresh;
    c.params.c_tenure = o.c_tenure;
    for (std::size_t t = 0; t < o.trials; ++t) c.seeds.push_back(o.seed_base + t);
    c.out_dir = o.out;
    c.workers = o.workers;
    c.delay_seconds = o.delay;
    c.clock = o.real_clock ? mopls::ClockMode::real : mopls::ClockMode::simulated;
    return c;
}

std::vector<double> column(const std::vector<mopls::AggregateRow>& rows, bool use_median)
{
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(use_median ? r.hc_median : r.hc_mean);
    return out;
}

void print_speedup(const std::string& stat, const mopls::SpeedupOutcome& s)
{
    std::cout << std::left << std::setw(8) << stat;
    if (s.speedup) {
        std::cout << "speedup=" << *s.speedup << " baseline_time=" << *s.baseline_time
                  << " target_time=" << *s.target_time << '\n';
    } else {
        std::cout << "not reached";
        if (!s.baseline_time) std::cout << " (baseline)";
        if (!s.target_time) std::cout << " (target)";
        std::cout << " max_hc=" << s.max_coverage << '\n';
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parallel surrogate-assisted multi-objective local search"};
    app.require_subcommand(1);

    RunOptions o;
    auto* run = app.add_subcommand("run", "Run trials and write records, aggregate CSV and plot");
    run->set_config("--config", "", "Read options from a TOML/INI file; flags override it");
    run->add_option("--problem", o.problem, "Problem family")->check(CLI::IsMember(mopls::problem_names()));
    run->add_option("--dim", o.dim, "Decision dimension")->check(CLI::PositiveNumber);
    run->add_option("--algo", o.algo, "mopls or random-search")->check(CLI::IsMember({"mopls", "random-search"}));
    run->add_option("--pop", o.pop, "Centers per iteration (N)")->check(CLI::PositiveNumber);
    run->add_option("--budget", o.budget, "Total evaluations (E_T)");
    run->add_option("--init", o.init, "Initial design size; 0 means 2d+2");
    run->add_option("--wall-budget", o.wall_budget, "Iterations W; sets E_T = E_I + W*N");
    run->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
    run->add_option("--seed-base", o.seed_base, "Seed of the first trial; later trials count up");
    run->add_option("--out", o.out, "Output directory");
    run->add_option("--workers", o.workers, "Worker threads; 0 means one per center");
    run->add_option("--delay", o.delay, "Seconds charged per evaluation")->check(CLI::NonNegativeNumber);
    run->add_flag("--real-clock", o.real_clock, "Sleep for the delay instead of simulating it");
    run->add_option("--r-init", o.r_init, "Initial search radius");
    run->add_option("--prob-cand", o.prob_cand, "Probability of a surrogate search");
    run->add_option("--prob-hv", o.prob_hv, "Probability of the hypervolume choice");
    run->add_option("--c-thresh", o.c_thresh, "Failures before a point turns tabu");
    run->add_option("--c-tenure", o.c_tenure, "Iterations a point stays tabu");

    std::string agg_in;
    std::string agg_out;
    auto* agg = app.add_subcommand("aggregate", "Aggregate the records of a directory into a CSV");
    agg->add_option("--in", agg_in, "Directory of JSONL records")->required()->check(CLI::ExistingDirectory);
    agg->add_option("--out", agg_out, "CSV file to write")->required();

    std::vector<std::string> plot_series;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "Plot aggregate CSVs as coverage curves");
    plot->add_option("--series", plot_series, "label=path/to/aggregate.csv, repeatable")->required();
    plot->add_option("--out", plot_out, "SVG file to write")->required();

    double target_hc = 0.0;
    std::string baseline_dir;
    std::string target_dir;
    auto* sp = app.add_subcommand("speedup", "Speed-up to a target coverage from stored records");
    sp->add_option("--target-hc", target_hc, "Coverage target alpha")->required();
    sp->add_option("--baseline", baseline_dir, "Records of the serial baseline")->required()->check(
        CLI::ExistingDirectory);
    sp->add_option("--target", target_dir, "Records of the algorithm under test")->required()->check(
        CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto summary = mopls::run_experiment(to_config(o));
            for (const auto& f : summary.records) std::cout << f.string() << '\n';
            std::cout << summary.aggregate_csv.string() << '\n' << summary.plot_svg.string() << '\n';
            return summary.failures.empty() ? 0 : 2;
        }
        if (*agg) {
            const auto rows = mopls::aggregate(mopls::load_records(agg_in));
            mopls::write_aggregate_csv(agg_out, rows);
            return 0;
        }
        if (*plot) {
            std::vector<mopls::PlotSeries> series;
            for (const auto& s : plot_series) {
                const auto eq = s.find('=');
                if (eq == std::string::npos) throw mopls::ArgumentError("series must be label=path: " + s);
                series.push_back({s.substr(0, eq), mopls::read_aggregate_csv(s.substr(eq + 1))});
            }
            mopls::write_progress_svg(plot_out, series);
            return 0;
        }
        if (*sp) {
            const auto base = mopls::aggregate(mopls::load_records(baseline_dir));
            const auto target = mopls::aggregate(mopls::load_records(target_dir));
            for (bool use_median : {false, true}) {
                const auto b = column(base, use_median);
                const auto t = column(target, use_median);
                print_speedup(use_median ? "median" : "mean", mopls::speedup_to_target(b, t, target_hc));
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
