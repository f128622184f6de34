#pragma once

#include "mopls/types.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace mopls {

/// Pareto dominance for minimization: a is no worse everywhere and strictly better somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Indices of the points not dominated by any other point. Duplicates of a
/// non-dominated vector are all kept. Result is sorted ascending.
std::vector<std::size_t> non_dominated_subset(std::span<const ObjectiveVector> points);

/// Peels the set into successive non-dominated fronts (each sorted ascending).
/// Sorting stops once at least `stop_after` indices are covered; the default
/// ranks everything.
std::vector<std::vector<std::size_t>>
non_dominated_sort(std::span<const ObjectiveVector> points,
                   std::size_t stop_after = std::numeric_limits<std::size_t>::max());

} // namespace mopls
