#include "mopls/types.hpp"

#include <algorithm>
#include <cmath>

namespace mopls {

void check_decision(const DecisionVector& x, std::size_t d)
{
    if (x.size() != d) {
        throw DimensionError("decision vector has length " + std::to_string(x.size()) +
                             ", expected " + std::to_string(d));
    }
    for (double c : x) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw DimensionError("decision coordinate outside [0,1]");
        }
    }
}

bool all_finite(const std::vector<double>& v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) {
        throw DimensionError("distance between vectors of different length");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return std::sqrt(s);
}

} // namespace mopls
