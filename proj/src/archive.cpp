#include "mopls/archive.hpp"

#include "mopls/dominance.hpp"

#include <algorithm>

namespace mopls {

PointId EvaluationArchive::add(DecisionVector decision, ObjectiveVector objectives,
                               MemoryAttributes memory)
{
    if (points_.empty()) {
        dimension_ = decision.size();
        objectives_ = objectives.size();
    }
    check_decision(decision, dimension_);
    if (objectives.size() != objectives_) {
        throw DimensionError("objective vector length differs from the archive's");
    }
    if (!all_finite(objectives)) {
        throw EvaluationError("non-finite objective vector cannot enter the archive");
    }

    const PointId id = points_.size();
    const bool dominated = std::any_of(pareto_.begin(), pareto_.end(), [&](PointId p) {
        return dominates(points_[p].objectives, objectives);
    });
    if (!dominated) {
        std::erase_if(pareto_, [&](PointId p) { return dominates(objectives, points_[p].objectives); });
        pareto_.push_back(id);
    }

    points_.push_back(EvaluatedPoint{id, std::move(decision), std::move(objectives), MemoryAttributes{}});
    set_memory(id, memory);
    return id;
}

const EvaluatedPoint& EvaluationArchive::at(PointId id) const
{
    if (id >= points_.size()) {
        throw ContractViolation("archive ordinal " + std::to_string(id) + " out of range");
    }
    return points_[id];
}

void EvaluationArchive::set_memory(PointId id, const MemoryAttributes& memory)
{
    if (id >= points_.size()) {
        throw ContractViolation("archive ordinal " + std::to_string(id) + " out of range");
    }
    if (!(memory.radius > 0.0) || memory.failure_count < 0 || memory.tabu_count < 0) {
        throw ContractViolation("invalid memory attributes");
    }
    points_[id].memory = memory;
    if (memory.tabu_count > 0) {
        tabu_.insert(id);
    } else {
        tabu_.erase(id);
    }
}

std::vector<PointId> EvaluationArchive::pareto_ids_from_scratch() const
{
    const auto ys = objective_vectors();
    return non_dominated_subset(ys);
}

std::vector<ObjectiveVector> EvaluationArchive::objective_vectors() const
{
    std::vector<ObjectiveVector> out;
    out.reserve(points_.size());
    for (const auto& p : points_) {
        out.push_back(p.objectives);
    }
    return out;
}

std::vector<ObjectiveVector> EvaluationArchive::pareto_objectives() const
{
    std::vector<ObjectiveVector> out;
    out.reserve(pareto_.size());
    for (PointId id : pareto_) {
        out.push_back(points_[id].objectives);
    }
    return out;
}

} // namespace mopls
