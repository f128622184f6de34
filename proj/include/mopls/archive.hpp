#pragma once

#include "mopls/types.hpp"

#include <set>
#include <vector>

namespace mopls {

/// Insertion-ordered record of every expensively evaluated point, with the
/// tabu subset and the Pareto subset maintained alongside.
///
/// Objective vectors never change after admission. Memory attributes are
/// only written through set_memory(), which keeps tabu membership equal to
/// tabu_count > 0.
class EvaluationArchive {
public:
    EvaluationArchive() = default;

    /// Admits a point and returns its ordinal. Objectives must be finite and
    /// share the length of earlier points.
    PointId add(DecisionVector decision, ObjectiveVector objectives, MemoryAttributes memory);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    const EvaluatedPoint& at(PointId id) const;
    const std::vector<EvaluatedPoint>& points() const noexcept { return points_; }

    void set_memory(PointId id, const MemoryAttributes& memory);

    const std::set<PointId>& tabu_ids() const noexcept { return tabu_; }
    bool is_tabu(PointId id) const { return tabu_.contains(id); }

    /// Ordinals of the non-dominated points, ascending.
    const std::vector<PointId>& pareto_ids() const noexcept { return pareto_; }

    /// Pareto set rebuilt from scratch; used to cross-check the incremental set.
    std::vector<PointId> pareto_ids_from_scratch() const;

    std::vector<ObjectiveVector> objective_vectors() const;
    std::vector<ObjectiveVector> pareto_objectives() const;

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t objective_count() const noexcept { return objectives_; }

private:
    std::vector<EvaluatedPoint> points_;
    std::set<PointId> tabu_;
    std::vector<PointId> pareto_;
    std::size_t dimension_ = 0;
    std::size_t objectives_ = 0;
};

} // namespace mopls
