#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mopls {

/// A point of the unit hypercube [0,1]^d.
using DecisionVector = std::vector<double>;

/// Objective values, all minimized.
using ObjectiveVector = std::vector<double>;

/// Archive ordinal: the insertion index of an evaluated point.
using PointId = std::size_t;

// Error hierarchy. Everything thrown by the library derives from Error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class MetricUndefined : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Raised when every archive point is tabu and no center can be chosen.
class SelectionStarvation : public Error {
public:
    SelectionStarvation(std::size_t iteration, const std::string& what)
        : Error(what), iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// Raised by the batch executor; carries the submission index of the failing point.
class BatchError : public Error {
public:
    BatchError(std::size_t index, const std::string& what)
        : Error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Per-point memory: local search radius, failure count and tabu count.
struct MemoryAttributes {
    double radius = 0.2;
    int failure_count = 0;
    int tabu_count = 0;

    bool operator==(const MemoryAttributes&) const = default;
};

struct EvaluatedPoint {
    PointId id = 0;
    DecisionVector decision;
    ObjectiveVector objectives;
    MemoryAttributes memory;
};

/// Throws DimensionError unless every coordinate lies in [0,1] and the length is d.
void check_decision(const DecisionVector& x, std::size_t d);

/// True when every entry is finite.
bool all_finite(const std::vector<double>& v) noexcept;

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b);

} // namespace mopls
