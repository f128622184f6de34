#pragma once

#include "mopls/sampling.hpp"
#include "mopls/types.hpp"

#include <span>
#include <vector>

namespace mopls {

using ReferenceVector = std::vector<double>;

/// Exact dominated hypervolume bounded by `ref` for k <= 3 objectives.
/// Points not strictly below `ref` in every coordinate are ignored.
/// Throws UnsupportedDimension for k > 3.
double hv_exact(std::span<const ObjectiveVector> front, const ReferenceVector& ref);

/// Monte-Carlo estimate of the same measure, sampling uniformly in the box
/// spanned by the componentwise minimum of the front and `ref`. Any k.
double hv_monte_carlo(std::span<const ObjectiveVector> front, const ReferenceVector& ref,
                      std::size_t samples, RngStream& rng);

/// Leave-one-out contributions hv(front) - hv(front without i). The front
/// must be mutually non-dominated (ContractViolation otherwise).
std::vector<double> hv_contributions(std::span<const ObjectiveVector> front,
                                     const ReferenceVector& ref);

/// Exact gain hv(front + candidate) - hv(front); 0 when the candidate is
/// weakly dominated by a front member. k <= 3.
double hv_improvement_exact(std::span<const ObjectiveVector> front,
                            const ObjectiveVector& candidate, const ReferenceVector& ref);

/// Monte-Carlo gain: uniform samples in the box [candidate, ref], counting
/// the ones no front member dominates.
double hv_improvement_monte_carlo(std::span<const ObjectiveVector> front,
                                  const ObjectiveVector& candidate, const ReferenceVector& ref,
                                  std::size_t samples, RngStream& rng);

/// Exact for k <= 3, Monte Carlo with `mc_samples` draws otherwise.
double hv_improvement(std::span<const ObjectiveVector> front, const ObjectiveVector& candidate,
                      const ReferenceVector& ref, std::size_t mc_samples, RngStream& rng);

/// Reference vector used inside a run: componentwise maximum over `points`
/// pushed out by 10% of the observed range (or of the magnitude, when the
/// range collapses).
ReferenceVector running_reference(std::span<const ObjectiveVector> points);

} // namespace mopls
