#pragma once

#include "mopls/hypervolume.hpp"
#include "mopls/types.hpp"

#include <chrono>
#include <functional>
#include <string>
#include <vector>

namespace mopls {

enum class ClockMode { simulated, real };

/// A benchmark objective over [0,1]^d. Problems whose native domain is not
/// the unit cube remap coordinates internally.
struct ProblemSpec {
    std::string name;     // family name, e.g. "zdt1"
    std::size_t d = 0;
    std::size_t k = 0;
    std::function<ObjectiveVector(const DecisionVector&)> evaluate;
    /// n points on the analytic Pareto front; empty when the front is unknown.
    std::function<std::vector<ObjectiveVector>(std::size_t)> pareto_front_sampler;
    ReferenceVector reporting_ref;
    std::chrono::duration<double> eval_delay{0.0};
    ClockMode clock = ClockMode::simulated;

    /// Registry key, e.g. "zdt1-d8".
    std::string key() const;
};

/// Families known to the registry.
const std::vector<std::string>& problem_names();

/// Looks up a family by name ("zdt1" ... "zdt6", "lzf1" ... "lzf6").
ProblemSpec make_problem(const std::string& name, std::size_t d);

/// Accepts registry keys of the form "<name>-d<dim>".
ProblemSpec make_problem(const std::string& key);

ObjectiveVector evaluate_zdt(const std::string& name, const DecisionVector& x);
ObjectiveVector evaluate_lzf(const std::string& name, const DecisionVector& x);

std::vector<ObjectiveVector> pareto_front_sample(const std::string& name, std::size_t n);

/// Same problem whose evaluations cost `delay`. In real mode each evaluation
/// sleeps; in simulated mode the delay is only charged to the simulated clock.
ProblemSpec expensive_wrapper(ProblemSpec inner, std::chrono::duration<double> delay,
                              ClockMode mode = ClockMode::simulated);

} // namespace mopls
