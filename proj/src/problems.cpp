#include "mopls/problems.hpp"

#include <algorithm>
#include <cctype>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

namespace mopls {

namespace {

using std::numbers::pi;

// Disconnected pieces of the ZDT3 front, as f1 intervals.
constexpr std::array<std::pair<double, double>, 5> kZdt3Segments{{
    {0.0, 0.0830015349},
    {0.1822287280, 0.2577623634},
    {0.4093136748, 0.4538821041},
    {0.6183967944, 0.6525117038},
    {0.8233317983, 0.8518328654},
}};

constexpr double kZdt6MinF1 = 0.2807753191;

void require_dim(const DecisionVector& x, std::size_t min_d)
{
    if (x.size() < min_d) {
        throw DimensionError("problem needs at least " + std::to_string(min_d) + " decision variables");
    }
}

double tail_sum(const DecisionVector& x)
{
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    return s;
}

ObjectiveVector zdt1(const DecisionVector& x)
{
    const double f1 = x[0];
    const double g = 1.0 + 9.0 * tail_sum(x) / static_cast<double>(x.size() - 1);
    return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

ObjectiveVector zdt2(const DecisionVector& x)
{
    const double f1 = x[0];
    const double g = 1.0 + 9.0 * tail_sum(x) / static_cast<double>(x.size() - 1);
    const double r = f1 / g;
    return {f1, g * (1.0 - r * r)};
}

ObjectiveVector zdt3(const DecisionVector& x)
{
    const double f1 = x[0];
    const double g = 1.0 + 9.0 * tail_sum(x) / static_cast<double>(x.size() - 1);
    const double r = f1 / g;
    return {f1, g * (1.0 - std::sqrt(r) - r * std::sin(10.0 * pi * f1))};
}

ObjectiveVector zdt4(const DecisionVector& x)
{
    const double f1 = x[0];
    double g = 1.0 + 10.0 * static_cast<double>(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double xi = -5.0 + 10.0 * x[i];
        g += xi * xi - 10.0 * std::cos(4.0 * pi * xi);
    }
    return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

ObjectiveVector zdt6(const DecisionVector& x)
{
    const double s6 = std::pow(std::sin(6.0 * pi * x[0]), 6);
    const double f1 = 1.0 - std::exp(-4.0 * x[0]) * s6;
    const double g = 1.0 + 9.0 * std::pow(tail_sum(x) / static_cast<double>(x.size() - 1), 0.25);
    const double r = f1 / g;
    return {f1, g * (1.0 - r * r)};
}

// LZ09 two-objective family. Coordinates are 1-based in the published
// definitions; j below follows that convention.
enum class LzDomain { unit, signed_tail };

struct LzShape {
    LzDomain domain;
    // Pareto-set value of coordinate j given x1 (n = dimension).
    double (*odd)(double x1, double j, double n);
    double (*even)(double x1, double j, double n);
    // Multimodal distance term 4y^2 - cos(8 pi y) + 1 instead of y^2.
    bool rastrigin = false;
    bool concave_front = false;
};

double power_set(double x1, double j, double n)
{
    return std::pow(x1, 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)));
}

double sine_set(double x1, double j, double n)
{
    return std::sin(6.0 * pi * x1 + j * pi / n);
}

double cos_08(double x1, double j, double n)
{
    return 0.8 * x1 * std::cos(6.0 * pi * x1 + j * pi / n);
}

double sin_08(double x1, double j, double n)
{
    return 0.8 * x1 * std::sin(6.0 * pi * x1 + j * pi / n);
}

double cos_08_third(double x1, double j, double n)
{
    return 0.8 * x1 * std::cos((6.0 * pi * x1 + j * pi / n) / 3.0);
}

double spiral_amplitude(double x1, double j, double n)
{
    return 0.3 * x1 * x1 * std::cos(24.0 * pi * x1 + 4.0 * j * pi / n) + 0.6 * x1;
}

double spiral_cos(double x1, double j, double n)
{
    return spiral_amplitude(x1, j, n) * std::cos(6.0 * pi * x1 + j * pi / n);
}

double spiral_sin(double x1, double j, double n)
{
    return spiral_amplitude(x1, j, n) * std::sin(6.0 * pi * x1 + j * pi / n);
}

// lzf1..lzf5 are LZ09 F1..F5; lzf6 is LZ09 F7 (F6 has three objectives).
const LzShape& lz_shape(const std::string& name)
{
    static const LzShape f1{LzDomain::unit, power_set, power_set};
    static const LzShape f2{LzDomain::signed_tail, sine_set, sine_set};
    static const LzShape f3{LzDomain::signed_tail, cos_08, sin_08};
    static const LzShape f4{LzDomain::signed_tail, cos_08_third, sin_08};
    static const LzShape f5{LzDomain::signed_tail, spiral_cos, spiral_sin};
    static const LzShape f7{LzDomain::unit, power_set, power_set, true};
    if (name == "lzf1") return f1;
    if (name == "lzf2") return f2;
    if (name == "lzf3") return f3;
    if (name == "lzf4") return f4;
    if (name == "lzf5") return f5;
    if (name == "lzf6") return f7;
    throw ArgumentError("unknown LZF problem: " + name);
}

double lz_term(const LzShape& shape, double y)
{
    if (shape.rastrigin) {
        return 4.0 * y * y - std::cos(8.0 * y * pi) + 1.0;
    }
    return y * y;
}

// n points with f1 evenly spaced over [lo, hi], or over (lo, hi] when open_left.
std::vector<ObjectiveVector> sample_curve(std::size_t n, double lo, double hi, double (*f2)(double),
                                          bool open_left = false)
{
    std::vector<ObjectiveVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = open_left ? static_cast<double>(i + 1) / static_cast<double>(n)
                         : n == 1  ? 0.0
                                   : static_cast<double>(i) / static_cast<double>(n - 1);
        const double f1 = lo + (hi - lo) * t;
        out.push_back({f1, f2(f1)});
    }
    return out;
}

double convex_front(double f1) { return 1.0 - std::sqrt(f1); }
double concave_front(double f1) { return 1.0 - f1 * f1; }
double zdt3_front(double f1) { return 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * pi * f1); }

std::vector<ObjectiveVector> sample_zdt3(std::size_t n)
{
    double total = 0.0;
    for (const auto& [a, b] : kZdt3Segments) total += b - a;

    // Spread n points over the segments in proportion to their length, at
    // least one per segment when n allows.
    std::vector<std::size_t> counts(kZdt3Segments.size(), 0);
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < kZdt3Segments.size(); ++s) {
        const double share = (kZdt3Segments[s].second - kZdt3Segments[s].first) / total;
        counts[s] = static_cast<std::size_t>(std::floor(share * static_cast<double>(n)));
        assigned += counts[s];
    }
    for (std::size_t s = 0; assigned < n; s = (s + 1) % counts.size()) {
        ++counts[s];
        ++assigned;
    }
    std::vector<ObjectiveVector> out;
    out.reserve(n);
    for (std::size_t s = 0; s < kZdt3Segments.size(); ++s) {
        // A later segment's left end ties in f2 with the previous segment's
        // right end, so it is dominated and left out.
        auto part = sample_curve(counts[s], kZdt3Segments[s].first, kZdt3Segments[s].second, zdt3_front, s > 0);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

bool is_zdt(const std::string& name)
{
    return name == "zdt1" || name == "zdt2" || name == "zdt3" || name == "zdt4" || name == "zdt6";
}

} // namespace

std::string ProblemSpec::key() const
{
    return name + "-d" + std::to_string(d);
}

const std::vector<std::string>& problem_names()
{
    static const std::vector<std::string> names{"zdt1", "zdt2", "zdt3", "zdt4", "zdt6",
                                                "lzf1", "lzf2", "lzf3", "lzf4", "lzf5", "lzf6"};
    return names;
}

ObjectiveVector evaluate_zdt(const std::string& name, const DecisionVector& x)
{
    require_dim(x, 2);
    if (name == "zdt1") return zdt1(x);
    if (name == "zdt2") return zdt2(x);
    if (name == "zdt3") return zdt3(x);
    if (name == "zdt4") return zdt4(x);
    if (name == "zdt6") return zdt6(x);
    throw ArgumentError("unknown ZDT problem: " + name);
}

ObjectiveVector evaluate_lzf(const std::string& name, const DecisionVector& x)
{
    require_dim(x, 3);
    const LzShape& shape = lz_shape(name);
    const double n = static_cast<double>(x.size());
    const double x1 = x[0];

    double sum_odd = 0.0;
    double sum_even = 0.0;
    std::size_t count_odd = 0;
    std::size_t count_even = 0;
    for (std::size_t idx = 1; idx < x.size(); ++idx) {
        const double j = static_cast<double>(idx + 1);
        const double xj = shape.domain == LzDomain::signed_tail ? 2.0 * x[idx] - 1.0 : x[idx];
        const bool odd = (idx + 1) % 2 == 1;
        const double y = xj - (odd ? shape.odd(x1, j, n) : shape.even(x1, j, n));
        const double t = lz_term(shape, y);
        if (odd) {
            sum_odd += t;
            ++count_odd;
        } else {
            sum_even += t;
            ++count_even;
        }
    }
    const double f1 = x1 + 2.0 / static_cast<double>(count_odd) * sum_odd;
    const double base = shape.concave_front ? 1.0 - x1 * x1 : 1.0 - std::sqrt(x1);
    const double f2 = base + 2.0 / static_cast<double>(count_even) * sum_even;
    return {f1, f2};
}

std::vector<ObjectiveVector> pareto_front_sample(const std::string& name, std::size_t n)
{
    if (n == 0) {
        throw ArgumentError("front sample size must be positive");
    }
    if (name == "zdt1" || name == "zdt4" || name.starts_with("lzf")) {
        if (name.starts_with("lzf")) lz_shape(name);
        return sample_curve(n, 0.0, 1.0, convex_front);
    }
    if (name == "zdt2") return sample_curve(n, 0.0, 1.0, concave_front);
    if (name == "zdt3") return sample_zdt3(n);
    if (name == "zdt6") return sample_curve(n, kZdt6MinF1, 1.0, concave_front);
    throw ArgumentError("no analytic front for problem: " + name);
}

ProblemSpec make_problem(const std::string& name, std::size_t d)
{
    ProblemSpec spec;
    spec.name = name;
    spec.d = d;
    spec.k = 2;
    spec.reporting_ref = {11.0, 11.0};
    if (is_zdt(name)) {
        if (d < 2) throw DimensionError("ZDT problems need d >= 2");
        spec.evaluate = [name](const DecisionVector& x) { return evaluate_zdt(name, x); };
    } else if (name.starts_with("lzf")) {
        lz_shape(name);
        if (d < 3) throw DimensionError("LZF problems need d >= 3");
        spec.evaluate = [name](const DecisionVector& x) { return evaluate_lzf(name, x); };
    } else {
        throw ArgumentError("unknown problem: " + name);
    }
    spec.pareto_front_sampler = [name](std::size_t n) { return pareto_front_sample(name, n); };
    return spec;
}

ProblemSpec make_problem(const std::string& key)
{
    const auto pos = key.rfind("-d");
    if (pos == std::string::npos || pos + 2 >= key.size()) {
        throw ArgumentError("problem key must look like <name>-d<dim>: " + key);
    }
    const std::string dim = key.substr(pos + 2);
    if (!std::all_of(dim.begin(), dim.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw ArgumentError("problem key must look like <name>-d<dim>: " + key);
    }
    return make_problem(key.substr(0, pos), static_cast<std::size_t>(std::stoul(dim)));
}

ProblemSpec expensive_wrapper(ProblemSpec inner, std::chrono::duration<double> delay, ClockMode mode)
{
    inner.eval_delay = delay;
    inner.clock = mode;
    if (mode == ClockMode::real && delay.count() > 0.0) {
        inner.evaluate = [f = std::move(inner.evaluate), delay](const DecisionVector& x) {
            std::this_thread::sleep_for(delay);
            return f(x);
        };
    }
    return inner;
}

} // namespace mopls
