#include "mopls/dominance.hpp"
#include "mopls/problems.hpp"

#include "support.hpp"

#include <doctest.h>

#include <chrono>
#include <numbers>

using namespace mopls;
using testkit::Vec;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form Pareto sets of the LZ09 problems behind lzf1..lzf6, written
// out per problem in native coordinates (x1 in [0,1], tail in [0,1] or [-1,1]).
double lz_set_value(const std::string& name, double x1, int j, int n)
{
    const double phase = 6.0 * kPi * x1 + j * kPi / n;
    const bool odd = j % 2 == 1;
    if (name == "lzf1" || name == "lzf6") return std::pow(x1, 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)));
    if (name == "lzf2") return std::sin(phase);
    if (name == "lzf3") return odd ? 0.8 * x1 * std::cos(phase) : 0.8 * x1 * std::sin(phase);
    if (name == "lzf4") return odd ? 0.8 * x1 * std::cos(phase / 3.0) : 0.8 * x1 * std::sin(phase);
    const double amp = 0.3 * x1 * x1 * std::cos(24.0 * kPi * x1 + 4.0 * j * kPi / n) + 0.6 * x1;
    return odd ? amp * std::cos(phase) : amp * std::sin(phase);
}

bool signed_tail(const std::string& name)
{
    return name == "lzf2" || name == "lzf3" || name == "lzf4" || name == "lzf5";
}

Vec on_pareto_set(const std::string& name, double x1, std::size_t d)
{
    Vec x(d);
    x[0] = x1;
    for (std::size_t i = 1; i < d; ++i) {
        const double v = lz_set_value(name, x1, static_cast<int>(i + 1), static_cast<int>(d));
        x[i] = signed_tail(name) ? (v + 1.0) / 2.0 : v;
    }
    return x;
}

} // namespace

TEST_CASE("ZDT1 fixtures")
{
    const auto at_origin = evaluate_zdt("zdt1", Vec(8, 0.0));
    CHECK(at_origin[0] == doctest::Approx(0.0));
    CHECK(at_origin[1] == doctest::Approx(1.0));

    Vec corner(8, 0.0);
    corner[0] = 1.0;
    const auto at_corner = evaluate_zdt("zdt1", corner);
    CHECK(at_corner[0] == doctest::Approx(1.0));
    CHECK(std::abs(at_corner[1]) <= 1e-15);

    const auto ones = evaluate_zdt("zdt1", Vec(8, 1.0));
    CHECK(ones[0] == doctest::Approx(1.0));
    CHECK(ones[1] == doctest::Approx(10.0 * (1.0 - std::sqrt(0.1))));
    CHECK(ones[1] == doctest::Approx(6.8377).epsilon(1e-4));
}

TEST_CASE("ZDT family on its Pareto set")
{
    testkit::Gen gen(61);
    for (int t = 0; t < 200; ++t) {
        Vec x(16, 0.0);
        x[0] = gen.uniform();
        const double f1 = x[0];
        CHECK(evaluate_zdt("zdt1", x)[1] == doctest::Approx(1.0 - std::sqrt(f1)));
        CHECK(evaluate_zdt("zdt2", x)[1] == doctest::Approx(1.0 - f1 * f1));
        CHECK(evaluate_zdt("zdt3", x)[1] == doctest::Approx(1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * kPi * f1)));
        // ZDT4's tail optimum is the centre of [-5,5], i.e. 0.5 in unit coordinates.
        Vec x4(16, 0.5);
        x4[0] = f1;
        CHECK(evaluate_zdt("zdt4", x4)[1] == doctest::Approx(1.0 - std::sqrt(f1)));
        const auto z6 = evaluate_zdt("zdt6", x);
        CHECK(z6[1] == doctest::Approx(1.0 - z6[0] * z6[0]));
    }
}

TEST_CASE("LZF images of Pareto-set points lie on the front curve")
{
    testkit::Gen gen(62);
    for (const std::string name : {"lzf1", "lzf2", "lzf3", "lzf4", "lzf5", "lzf6"}) {
        for (std::size_t d : {8u, 16u, 24u}) {
            for (int t = 0; t < 50; ++t) {
                const double x1 = gen.uniform();
                const auto x = on_pareto_set(name, x1, d);
                bool inside = true;
                for (double c : x) inside = inside && c >= 0.0 && c <= 1.0;
                REQUIRE(inside);
                const auto y = evaluate_lzf(name, x);
                CHECK(std::abs(y[0] - x1) <= 1e-9);
                CHECK(std::abs(y[1] - (1.0 - std::sqrt(x1))) <= 1e-9);
            }
        }
    }
}

TEST_CASE("LZF points off the Pareto set are worse")
{
    testkit::Gen gen(63);
    for (const std::string name : {"lzf1", "lzf2", "lzf3", "lzf4", "lzf5", "lzf6"}) {
        for (int t = 0; t < 50; ++t) {
            const double x1 = gen.uniform();
            auto x = on_pareto_set(name, x1, 8);
            x[3] += x[3] > 0.5 ? -0.05 : 0.05;
            const auto y = evaluate_lzf(name, x);
            CHECK(y[1] > 1.0 - std::sqrt(x1) + 1e-6);
        }
    }
}

TEST_CASE("evaluators are total, finite and deterministic")
{
    testkit::Gen gen(64);
    for (const auto& name : problem_names()) {
        const auto p = make_problem(name, 8);
        CHECK(p.k == 2);
        CHECK(p.key() == name + "-d8");
        for (int t = 0; t < 200; ++t) {
            const auto x = t == 0 ? Vec(8, 0.0) : t == 1 ? Vec(8, 1.0) : gen.vec(8);
            const auto y = p.evaluate(x);
            CHECK(y.size() == 2);
            CHECK(all_finite(y));
            CHECK(p.evaluate(x) == y);
        }
    }
    CHECK_THROWS_AS(make_problem("dtlz2", 8), ArgumentError);
    CHECK_THROWS_AS(make_problem("zdt1", 1), DimensionError);
    CHECK(make_problem("lzf3-d16").d == 16);
    CHECK_THROWS_AS(make_problem("lzf3-dx"), ArgumentError);
}

TEST_CASE("analytic front samples")
{
    const auto three = pareto_front_sample("zdt1", 3);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == Vec{0.0, 1.0});
    CHECK(three[1][0] == doctest::Approx(0.5));
    CHECK(three[1][1] == doctest::Approx(1.0 - std::sqrt(0.5)));
    CHECK(three[2] == Vec{1.0, 0.0});

    for (const auto& name : problem_names()) {
        const auto front = pareto_front_sample(name, 1000);
        CHECK(front.size() == 1000);
        CHECK(non_dominated_subset(front).size() == front.size());
    }

    // ZDT3 samples stay on the disconnected segments, one point per segment at least.
    const auto z3 = pareto_front_sample("zdt3", 1000);
    const std::vector<std::pair<double, double>> segments{
        {0.0, 0.0830015349}, {0.1822287280, 0.2577623634}, {0.4093136748, 0.4538821041},
        {0.6183967944, 0.6525117038}, {0.8233317983, 0.8518328654}};
    std::vector<int> hits(segments.size(), 0);
    for (const auto& y : z3) {
        bool on = false;
        for (std::size_t s = 0; s < segments.size(); ++s) {
            if (y[0] >= segments[s].first && y[0] <= segments[s].second) {
                on = true;
                ++hits[s];
            }
        }
        CHECK(on);
    }
    for (int h : hits) CHECK(h > 0);
}

TEST_CASE("front samples are not dominated by random evaluations")
{
    testkit::Gen gen(65);
    for (const auto& name : problem_names()) {
        const auto p = make_problem(name, 8);
        const auto front = pareto_front_sample(name, 1000);
        std::vector<Vec> random;
        for (int i = 0; i < 10000; ++i) random.push_back(p.evaluate(gen.vec(8)));
        // Sweep: sort random images by f1 and keep the running minimum of f2.
        std::sort(random.begin(), random.end());
        std::vector<double> best(random.size());
        double run = INFINITY;
        for (std::size_t i = 0; i < random.size(); ++i) best[i] = run = std::min(run, random[i][1]);
        std::size_t violations = 0;
        for (const auto& y : front) {
            const auto it = std::upper_bound(random.begin(), random.end(), y[0],
                                             [](double v, const Vec& r) { return v < r[0]; });
            if (it == random.begin()) continue;
            const std::size_t last = static_cast<std::size_t>(it - random.begin()) - 1;
            // A random image dominates y only if it is at least as good in both and better in one.
            if (best[last] < y[1]) ++violations;
        }
        CHECK_MESSAGE(violations == 0, name);
    }
}

TEST_CASE("evaluation of many points is fast")
{
    testkit::Gen gen(66);
    std::vector<Vec> xs;
    for (int i = 0; i < 100000; ++i) xs.push_back(gen.vec(24));
    const auto start = std::chrono::steady_clock::now();
    double sink = 0.0;
    for (const auto& name : {"zdt4", "lzf5"}) {
        const auto p = make_problem(name, 24);
        for (const auto& x : xs) sink += p.evaluate(x)[1];
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    CHECK(std::isfinite(sink));
    CHECK(took.count() < 10.0);
}

TEST_CASE("expensive wrapper")
{
    const auto inner = make_problem("zdt2", 4);
    const auto same = expensive_wrapper(inner, std::chrono::duration<double>(0.0));
    CHECK(same.evaluate(Vec(4, 0.3)) == inner.evaluate(Vec(4, 0.3)));

    const auto slow = expensive_wrapper(inner, std::chrono::duration<double>(0.02), ClockMode::real);
    const auto start = std::chrono::steady_clock::now();
    CHECK(slow.evaluate(Vec(4, 0.3)) == inner.evaluate(Vec(4, 0.3)));
    CHECK(std::chrono::steady_clock::now() - start >= std::chrono::milliseconds(19));

    const auto simulated = expensive_wrapper(inner, std::chrono::duration<double>(10.0));
    CHECK(simulated.eval_delay.count() == 10.0);
    CHECK(simulated.clock == ClockMode::simulated);
}
