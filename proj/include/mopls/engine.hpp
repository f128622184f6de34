#pragma once

#include "mopls/archive.hpp"
#include "mopls/executor.hpp"
#include "mopls/hypervolume.hpp"
#include "mopls/problems.hpp"
#include "mopls/sampling.hpp"
#include "mopls/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mopls {

struct EngineParams {
    std::size_t total_evals = 400;              // E_T
    std::size_t init_evals = 0;                 // E_I; 0 means 2d + 2
    std::size_t population = 4;                 // N, centers per iteration
    std::optional<std::size_t> wall_budget;     // W iterations; fixes E_T = E_I + W * N
    double r_init = 0.2;
    double prob_cand = 0.9;
    double prob_hv = 0.65;
    int c_thresh = 3;
    int c_tenure = 5;
    std::size_t n_cand_factor = 500;
    std::size_t mc_samples = 10000;
    std::size_t training_cap = 500;
    double mutation_sigma = 0.1;

    /// Copy with defaults filled in for dimension d (E_I, and E_T when a
    /// wall budget is set). Throws ArgumentError on invalid settings.
    EngineParams resolved(std::size_t d) const;
};

/// Radius-rule threshold, decaying linearly from 1 at E_I to 0 at E_T.
double d_thresh(std::size_t m, const EngineParams& params);

struct CenterSelection {
    std::vector<PointId> indices;
};

/// Picks N centers front by front, best hypervolume contribution first,
/// skipping tabu points and points inside an already chosen center's
/// scaled radius. Short selections are topped up without the radius rule,
/// then by reusing the best-ranked non-tabu points.
CenterSelection select_centers(const EvaluationArchive& archive, const EngineParams& params,
                               std::size_t m, const ReferenceVector& ref, std::size_t iteration = 0);

/// n_cand_factor * d Gaussian perturbations of the center, clipped to the
/// unit cube. Half the time the spread is isotropic with sigma = radius,
/// otherwise each coordinate gets its own |N(radius, radius^2/4)| scale.
std::vector<DecisionVector> generate_candidates(const EvaluatedPoint& center, RngStream& rng,
                                                std::size_t d, std::size_t n_cand_factor);

/// Gaussian (sigma) or uniform mutation with equal odds, each coordinate
/// mutated with probability 1/d and at least one coordinate always mutated.
DecisionVector mutate(const DecisionVector& center, RngStream& rng, double sigma = 0.1);

/// Index of the candidate with the largest hypervolume improvement over
/// `front`; ties go to the lowest index.
std::size_t best_hypervolume_index(std::span<const ObjectiveVector> predicted,
                                   std::span<const ObjectiveVector> front, const ReferenceVector& ref,
                                   std::size_t mc_samples, RngStream& rng);

/// Index of the candidate farthest (by minimum distance) from every
/// evaluated point; ties go to the lowest index.
std::size_t max_min_index(std::span<const DecisionVector> candidates, const EvaluationArchive& archive);

enum class SearchMode { hypervolume, max_min, mutation };

struct Proposal {
    DecisionVector decision;
    SearchMode mode = SearchMode::mutation;
};

/// Surrogate-assisted local search around one center, without the
/// expensive evaluation.
Proposal propose_point(const EvaluatedPoint& center, const EvaluationArchive& archive,
                       std::span<const ObjectiveVector> pareto_front, const ReferenceVector& ref,
                       const EngineParams& params, RngStream& rng);

using Evaluator = std::function<ObjectiveVector(const DecisionVector&)>;

/// One worker's full task: propose, evaluate, and initialise memory to
/// (r_init, 0, 0). A non-finite evaluation is retried once with a fresh
/// proposal; a second failure throws EvaluationError. The returned point's
/// id is not yet assigned.
EvaluatedPoint worker_search(const EvaluatedPoint& center, const EvaluationArchive& archive,
                             std::span<const ObjectiveVector> pareto_front, const ReferenceVector& ref,
                             const EngineParams& params, RngStream& rng, const Evaluator& evaluate);

/// First phase of the memory update: halves the radius and bumps the failure
/// count of every center whose new point added no hypervolume to
/// `pareto_before`. Returns the improvements.
std::vector<double> register_search_outcomes(EvaluationArchive& archive, const CenterSelection& centers,
                                             std::span<const ObjectiveVector> new_objectives,
                                             std::span<const ObjectiveVector> pareto_before,
                                             const ReferenceVector& ref);

/// Second phase: counts tabu tenures down and sends points whose failure
/// count exceeds c_thresh into the tabu list. Touches ids below `existing`.
void advance_tabu(EvaluationArchive& archive, std::size_t existing, const EngineParams& params);

/// Both phases, then admission of the new points. Returns their ids.
std::vector<PointId> update_memory_archive(EvaluationArchive& archive, const CenterSelection& centers,
                                           std::span<const EvaluatedPoint> new_points,
                                           std::span<const ObjectiveVector> pareto_before,
                                           const ReferenceVector& ref, const EngineParams& params);

struct RadiusSummary {
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};

struct IterationRow {
    std::size_t iteration = 0;     // 0 is the initial design
    std::size_t m = 0;             // evaluations so far
    std::vector<PointId> centers;
    std::vector<PointId> new_ids;
    std::vector<PointId> pareto_ids;
    double hypervolume = 0.0;      // against the problem's reporting reference
    std::size_t tabu_size = 0;
    RadiusSummary radii;
};

struct RunResult {
    EvaluationArchive archive;
    std::vector<IterationRow> rows;
    EngineParams params;
};

using IterationObserver = std::function<void(const IterationRow&, const EvaluationArchive&)>;

/// Builds the row describing the archive after an iteration.
IterationRow make_row(std::size_t iteration, const EvaluationArchive& archive, std::vector<PointId> centers,
                      std::vector<PointId> new_ids, const ProblemSpec& problem);

/// Full optimisation: Latin hypercube start, then synchronous iterations
/// until E_T evaluations. The observer sees every row as soon as it exists,
/// so a failing run still leaves its partial trace behind.
RunResult run(const ProblemSpec& problem, const EngineParams& params, std::uint64_t seed,
              BatchExecutor& executor, const IterationObserver& observer = {});

} // namespace mopls
