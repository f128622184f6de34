#include "mopls/engine.hpp"

#include "mopls/dominance.hpp"
#include "mopls/rbf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mopls {

namespace {

constexpr double kImprovementTolerance = 1e-12;

double clip_unit(double v)
{
    return std::clamp(v, 0.0, 1.0);
}

// Front members of `ids` ordered by descending hypervolume contribution,
// ties by ascending ordinal.
std::vector<PointId> sort_front(const EvaluationArchive& archive, const std::vector<PointId>& ids,
                                const ReferenceVector& ref)
{
    std::vector<ObjectiveVector> ys;
    ys.reserve(ids.size());
    for (PointId id : ids) ys.push_back(archive.at(id).objectives);
    const auto hc = hv_contributions(ys, ref);

    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hc[a] > hc[b]; });
    std::vector<PointId> out;
    out.reserve(ids.size());
    for (std::size_t i : order) out.push_back(ids[i]);
    return out;
}

bool inside_selected_radius(const EvaluationArchive& archive, const std::vector<PointId>& selected,
                            const EvaluatedPoint& z, double threshold)
{
    return std::any_of(selected.begin(), selected.end(), [&](PointId c) {
        const auto& center = archive.at(c);
        return euclidean_distance(center.decision, z.decision) <= center.memory.radius * threshold;
    });
}

RadiusSummary summarize_radii(const EvaluationArchive& archive)
{
    std::vector<double> r;
    r.reserve(archive.size());
    for (const auto& p : archive.points()) r.push_back(p.memory.radius);
    if (r.empty()) return {};
    std::sort(r.begin(), r.end());
    const std::size_t n = r.size();
    const double median = n % 2 == 1 ? r[n / 2] : 0.5 * (r[n / 2 - 1] + r[n / 2]);
    return {r.front(), median, r.back()};
}

} // namespace

EngineParams EngineParams::resolved(std::size_t d) const
{
    EngineParams p = *this;
    if (d == 0) throw ArgumentError("dimension must be positive");
    if (p.init_evals == 0) p.init_evals = 2 * d + 2;
    if (p.population == 0) throw ArgumentError("population N must be at least 1");
    if (p.init_evals < d + 1) throw ArgumentError("E_I must be at least d + 1");
    if (p.wall_budget) p.total_evals = p.init_evals + *p.wall_budget * p.population;
    if (p.total_evals < p.init_evals) throw ArgumentError("E_T must not be below E_I");
    if (!(p.r_init > 0.0)) throw ArgumentError("r_init must be positive");
    if (p.prob_cand < 0.0 || p.prob_cand > 1.0 || p.prob_hv < 0.0 || p.prob_hv > 1.0) {
        throw ArgumentError("probabilities must lie in [0,1]");
    }
    if (p.c_thresh < 0 || p.c_tenure < 1) throw ArgumentError("invalid tabu settings");
    if (p.n_cand_factor == 0 || p.training_cap == 0 || p.mc_samples == 0) {
        throw ArgumentError("candidate factor, training cap and MC samples must be positive");
    }
    return p;
}

double d_thresh(std::size_t m, const EngineParams& params)
{
    const double span = static_cast<double>(params.total_evals) - static_cast<double>(params.init_evals);
    if (span <= 0.0) return 0.0;
    const double t = 1.0 - (static_cast<double>(m) - static_cast<double>(params.init_evals)) / span;
    return std::clamp(t, 0.0, 1.0);
}

CenterSelection select_centers(const EvaluationArchive& archive, const EngineParams& params, std::size_t m,
                               const ReferenceVector& ref, std::size_t iteration)
{
    const std::size_t n_centers = params.population;
    if (archive.tabu_ids().size() >= archive.size()) {
        throw SelectionStarvation(iteration, "every archive point is tabu at iteration " + std::to_string(iteration));
    }
    const double threshold = d_thresh(m, params);

    std::vector<PointId> selected;
    std::vector<PointId> ranked;   // every point, in selection order
    std::vector<PointId> remaining(archive.size());
    std::iota(remaining.begin(), remaining.end(), 0);

    // Peel one front at a time; stop once N centers are chosen.
    while (!remaining.empty() && selected.size() < n_centers) {
        std::vector<ObjectiveVector> ys;
        ys.reserve(remaining.size());
        for (PointId id : remaining) ys.push_back(archive.at(id).objectives);
        std::vector<PointId> front;
        for (std::size_t i : non_dominated_subset(ys)) front.push_back(remaining[i]);

        for (PointId id : sort_front(archive, front, ref)) {
            ranked.push_back(id);
            if (selected.size() == n_centers || archive.is_tabu(id)) continue;
            const auto& z = archive.at(id);
            if (!selected.empty() && inside_selected_radius(archive, selected, z, threshold)) continue;
            selected.push_back(id);
        }
        std::vector<PointId> rest;
        rest.reserve(remaining.size() - front.size());
        std::set_difference(remaining.begin(), remaining.end(), front.begin(), front.end(), std::back_inserter(rest));
        remaining = std::move(rest);
    }
    if (selected.size() == n_centers) {
        return {selected};
    }

    // Fronts exhausted: rank whatever is left, then fill without the radius rule.
    while (!remaining.empty()) {
        std::vector<ObjectiveVector> ys;
        for (PointId id : remaining) ys.push_back(archive.at(id).objectives);
        std::vector<PointId> front;
        for (std::size_t i : non_dominated_subset(ys)) front.push_back(remaining[i]);
        const auto sorted = sort_front(archive, front, ref);
        ranked.insert(ranked.end(), sorted.begin(), sorted.end());
        std::vector<PointId> rest;
        std::set_difference(remaining.begin(), remaining.end(), front.begin(), front.end(), std::back_inserter(rest));
        remaining = std::move(rest);
    }
    for (PointId id : ranked) {
        if (selected.size() == n_centers) break;
        if (archive.is_tabu(id) || std::find(selected.begin(), selected.end(), id) != selected.end()) continue;
        selected.push_back(id);
    }

    // Fewer non-tabu points than N: reuse them in rank order.
    std::vector<PointId> usable;
    for (PointId id : ranked) {
        if (!archive.is_tabu(id)) usable.push_back(id);
    }
    for (std::size_t i = 0; selected.size() < n_centers; ++i) {
        selected.push_back(usable[i % usable.size()]);
    }
    return {selected};
}

std::vector<DecisionVector> generate_candidates(const EvaluatedPoint& center, RngStream& rng, std::size_t d,
                                                std::size_t n_cand_factor)
{
    const double sigma = center.memory.radius;
    if (!(sigma > 0.0)) {
        throw ContractViolation("center radius must be positive");
    }
    if (center.decision.size() != d) {
        throw DimensionError("center dimension does not match d");
    }
    std::vector<double> scale(d, sigma);
    if (rng.uniform() > 0.5) {
        for (auto& s : scale) s = std::abs(rng.normal(sigma, sigma / 2.0));
    }
    const std::size_t count = n_cand_factor * d;
    std::vector<DecisionVector> out(count, DecisionVector(d));
    for (auto& x : out) {
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = clip_unit(center.decision[j] + rng.normal(0.0, 1.0) * scale[j]);
        }
    }
    return out;
}

DecisionVector mutate(const DecisionVector& center, RngStream& rng, double sigma)
{
    const std::size_t d = center.size();
    if (d == 0) throw DimensionError("cannot mutate an empty vector");
    const bool gaussian = rng.uniform() < 0.5;
    const double rate = 1.0 / static_cast<double>(d);

    std::vector<bool> chosen(d, false);
    bool any = false;
    for (std::size_t j = 0; j < d; ++j) {
        chosen[j] = rng.uniform() < rate;
        any = any || chosen[j];
    }
    if (!any) chosen[rng.index(d)] = true;

    DecisionVector out = center;
    for (std::size_t j = 0; j < d; ++j) {
        if (!chosen[j]) continue;
        out[j] = gaussian ? clip_unit(center[j] + rng.normal(0.0, sigma)) : rng.uniform();
    }
    return out;
}

std::size_t best_hypervolume_index(std::span<const ObjectiveVector> predicted, std::span<const ObjectiveVector> front,
                                   const ReferenceVector& ref, std::size_t mc_samples, RngStream& rng)
{
    if (predicted.empty()) throw ArgumentError("no candidates to choose from");
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double gain = hv_improvement(front, predicted[i], ref, mc_samples, rng);
        if (gain > best_gain) {
            best_gain = gain;
            best = i;
        }
    }
    return best;
}

std::size_t max_min_index(std::span<const DecisionVector> candidates, const EvaluationArchive& archive)
{
    if (candidates.empty()) throw ArgumentError("no candidates to choose from");
    std::size_t best = 0;
    double best_dist = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : archive.points()) {
            nearest = std::min(nearest, euclidean_distance(candidates[i], p.decision));
        }
        if (nearest > best_dist) {
            best_dist = nearest;
            best = i;
        }
    }
    return best;
}

Proposal propose_point(const EvaluatedPoint& center, const EvaluationArchive& archive,
                       std::span<const ObjectiveVector> pareto_front, const ReferenceVector& ref,
                       const EngineParams& params, RngStream& rng)
{
    const std::size_t d = center.decision.size();
    if (rng.uniform() > params.prob_cand) {
        return {mutate(center.decision, rng, params.mutation_sigma), SearchMode::mutation};
    }

    const auto models = fit_all_objectives(center.decision, archive, params.training_cap);
    const auto candidates = generate_candidates(center, rng, d, params.n_cand_factor);

    Eigen::MatrixXd points(static_cast<Eigen::Index>(candidates.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = candidates[i][j];
        }
    }
    const Eigen::MatrixXd predicted = predict_many(models, points);

    std::vector<std::size_t> usable;
    std::vector<ObjectiveVector> ys;
    for (Eigen::Index i = 0; i < predicted.rows(); ++i) {
        ObjectiveVector y(predicted.cols());
        for (Eigen::Index j = 0; j < predicted.cols(); ++j) y[static_cast<std::size_t>(j)] = predicted(i, j);
        if (!all_finite(y)) continue;
        usable.push_back(static_cast<std::size_t>(i));
        ys.push_back(std::move(y));
    }
    if (usable.empty()) {
        return {mutate(center.decision, rng, params.mutation_sigma), SearchMode::mutation};
    }

    const auto nd = non_dominated_subset(ys);
    std::vector<DecisionVector> best_x;
    std::vector<ObjectiveVector> best_y;
    best_x.reserve(nd.size());
    best_y.reserve(nd.size());
    for (std::size_t i : nd) {
        best_x.push_back(candidates[usable[i]]);
        best_y.push_back(ys[i]);
    }

    if (rng.uniform() <= params.prob_hv) {
        const auto i = best_hypervolume_index(best_y, pareto_front, ref, params.mc_samples, rng);
        return {best_x[i], SearchMode::hypervolume};
    }
    return {best_x[max_min_index(best_x, archive)], SearchMode::max_min};
}

EvaluatedPoint worker_search(const EvaluatedPoint& center, const EvaluationArchive& archive,
                             std::span<const ObjectiveVector> pareto_front, const ReferenceVector& ref,
                             const EngineParams& params, RngStream& rng, const Evaluator& evaluate)
{
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto proposal = propose_point(center, archive, pareto_front, ref, params, rng);
        auto y = evaluate(proposal.decision);
        if (all_finite(y)) {
            EvaluatedPoint out;
            out.decision = std::move(proposal.decision);
            out.objectives = std::move(y);
            out.memory = MemoryAttributes{params.r_init, 0, 0};
            return out;
        }
    }
    throw EvaluationError("expensive evaluation returned non-finite values twice for center " +
                          std::to_string(center.id));
}

std::vector<double> register_search_outcomes(EvaluationArchive& archive, const CenterSelection& centers,
                                             std::span<const ObjectiveVector> new_objectives,
                                             std::span<const ObjectiveVector> pareto_before,
                                             const ReferenceVector& ref)
{
    if (new_objectives.size() != centers.indices.size()) {
        throw ContractViolation("one new point per center expected");
    }
    std::vector<double> gains(new_objectives.size());
    for (std::size_t k = 0; k < new_objectives.size(); ++k) {
        const PointId parent = centers.indices[k];
        if (parent >= archive.size()) {
            throw ContractViolation("center ordinal " + std::to_string(parent) + " is not in the archive");
        }
        gains[k] = hv_improvement_exact(pareto_before, new_objectives[k], ref);
        if (gains[k] <= kImprovementTolerance) {
            auto mem = archive.at(parent).memory;
            mem.radius /= 2.0;
            mem.failure_count += 1;
            archive.set_memory(parent, mem);
        }
    }
    return gains;
}

void advance_tabu(EvaluationArchive& archive, std::size_t existing, const EngineParams& params)
{
    for (PointId id = 0; id < existing && id < archive.size(); ++id) {
        auto mem = archive.at(id).memory;
        if (mem.tabu_count > 0) {
            mem.tabu_count -= 1;
        } else if (mem.failure_count > params.c_thresh) {
            mem.tabu_count = params.c_tenure;
            mem.radius = params.r_init;
            mem.failure_count = 0;
        } else {
            continue;
        }
        archive.set_memory(id, mem);
    }
}

std::vector<PointId> update_memory_archive(EvaluationArchive& archive, const CenterSelection& centers,
                                           std::span<const EvaluatedPoint> new_points,
                                           std::span<const ObjectiveVector> pareto_before,
                                           const ReferenceVector& ref, const EngineParams& params)
{
    std::vector<ObjectiveVector> ys;
    ys.reserve(new_points.size());
    for (const auto& p : new_points) ys.push_back(p.objectives);

    const std::size_t existing = archive.size();
    register_search_outcomes(archive, centers, ys, pareto_before, ref);
    advance_tabu(archive, existing, params);

    std::vector<PointId> ids;
    ids.reserve(new_points.size());
    for (const auto& p : new_points) {
        ids.push_back(archive.add(p.decision, p.objectives, p.memory));
    }
    return ids;
}

IterationRow make_row(std::size_t iteration, const EvaluationArchive& archive, std::vector<PointId> centers,
                      std::vector<PointId> new_ids, const ProblemSpec& problem)
{
    IterationRow row;
    row.iteration = iteration;
    row.m = archive.size();
    row.centers = std::move(centers);
    row.new_ids = std::move(new_ids);
    row.pareto_ids = archive.pareto_ids();
    row.hypervolume = hv_exact(archive.pareto_objectives(), problem.reporting_ref);
    row.tabu_size = archive.tabu_ids().size();
    row.radii = summarize_radii(archive);
    return row;
}

RunResult run(const ProblemSpec& problem, const EngineParams& raw_params, std::uint64_t seed,
              BatchExecutor& executor, const IterationObserver& observer)
{
    const EngineParams params = raw_params.resolved(problem.d);
    RunResult result{EvaluationArchive{}, {}, params};
    auto& archive = result.archive;

    auto emit = [&](IterationRow row) {
        if (observer) observer(row, archive);
        result.rows.push_back(std::move(row));
    };

    // Initial design.
    RngStream master(seed, 0);
    const auto design = latin_hypercube(params.init_evals, problem.d, master);
    const auto initial = executor.evaluate_batch(design, problem);
    std::vector<PointId> init_ids;
    for (const auto& [x, y] : initial.outputs) {
        if (!all_finite(y)) {
            throw EvaluationError("initial design point evaluated to non-finite objectives");
        }
        init_ids.push_back(archive.add(x, y, MemoryAttributes{params.r_init, 0, 0}));
    }
    emit(make_row(0, archive, {}, init_ids, problem));

    const std::size_t n = params.population;
    for (std::size_t iteration = 1; archive.size() < params.total_evals; ++iteration) {
        const std::size_t m = archive.size();
        const auto all_y = archive.objective_vectors();
        const ReferenceVector ref = running_reference(all_y);
        const auto pareto_before = archive.pareto_objectives();
        const CenterSelection centers = select_centers(archive, params, m, ref, iteration);

        // Workers see only this read-only snapshot and their own stream.
        std::vector<RngStream> streams;
        streams.reserve(n);
        for (std::size_t w = 0; w < n; ++w) streams.emplace_back(seed, w + 1, iteration);

        std::vector<DecisionVector> proposals(n);
        executor.run_tasks(n, [&](std::size_t w) {
            proposals[w] = propose_point(archive.at(centers.indices[w]), archive, pareto_before, ref, params,
                                         streams[w])
                               .decision;
        });
        auto batch = executor.evaluate_batch(proposals, problem);

        std::vector<std::size_t> failed;
        for (std::size_t w = 0; w < n; ++w) {
            if (!all_finite(batch.outputs[w].second)) failed.push_back(w);
        }
        if (!failed.empty()) {
            std::vector<DecisionVector> retry(failed.size());
            executor.run_tasks(failed.size(), [&](std::size_t t) {
                const std::size_t w = failed[t];
                retry[t] = propose_point(archive.at(centers.indices[w]), archive, pareto_before, ref, params,
                                         streams[w])
                               .decision;
            });
            auto second = executor.evaluate_batch(retry, problem);
            for (std::size_t t = 0; t < failed.size(); ++t) {
                if (!all_finite(second.outputs[t].second)) {
                    throw EvaluationError("worker " + std::to_string(failed[t]) + " produced non-finite objectives "
                                          "twice at iteration " + std::to_string(iteration));
                }
                batch.outputs[failed[t]] = std::move(second.outputs[t]);
            }
        }

        std::vector<EvaluatedPoint> fresh(n);
        for (std::size_t w = 0; w < n; ++w) {
            fresh[w].decision = std::move(batch.outputs[w].first);
            fresh[w].objectives = std::move(batch.outputs[w].second);
            fresh[w].memory = MemoryAttributes{params.r_init, 0, 0};
        }
        auto new_ids = update_memory_archive(archive, centers, fresh, pareto_before, ref, params);
        emit(make_row(iteration, archive, centers.indices, std::move(new_ids), problem));
    }
    return result;
}

} // namespace mopls
