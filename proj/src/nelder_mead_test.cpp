#include "dfwm/nelder_mead.hpp"
#include "dfwm/errors.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace dfwm;

namespace {

std::vector<std::vector<double>> simplex_at(std::vector<double> x0, double h) {
    std::vector<std::vector<double>> s(x0.size() + 1, x0);
    for (std::size_t i = 0; i < x0.size(); ++i) s[i + 1][i] += h;
    return s;
}

}  // namespace

TEST_CASE("finds the minimum of a shifted quadratic") {
    const std::vector<double> lo{-10, -10, -10}, hi{10, 10, 10};
    auto f = [](std::span<const double> x) {
        return (x[0] - 1) * (x[0] - 1) + 2 * (x[1] + 2) * (x[1] + 2) + 0.5 * (x[2] - 3) * (x[2] - 3);
    };
    NelderMeadOptions o;
    o.tolerance = 1e-14;
    const auto r = nelder_mead(f, simplex_at({0, 0, 0}, 1.0), lo, hi, o);
    CHECK(r.converged);
    CHECK(std::abs(r.x[0] - 1) < 1e-5);
    CHECK(std::abs(r.x[1] + 2) < 1e-5);
    CHECK(std::abs(r.x[2] - 3) < 1e-5);
}

TEST_CASE("Rosenbrock valley") {
    const std::vector<double> lo{-5, -5}, hi{5, 5};
    auto f = [](std::span<const double> x) {
        return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
    };
    NelderMeadOptions o;
    o.tolerance = 1e-16;
    o.max_evals = 5000;
    const auto r = nelder_mead(f, simplex_at({-1.2, 1.0}, 0.5), lo, hi, o);
    CHECK(r.value < 1e-10);
    CHECK(std::abs(r.x[0] - 1) < 1e-4);
}

TEST_CASE("minimum outside the box lands on the boundary") {
    const std::vector<double> lo{0, 0}, hi{1, 1};
    auto f = [](std::span<const double> x) { return (x[0] - 3) * (x[0] - 3) + (x[1] - 0.5) * (x[1] - 0.5); };
    bool inside = true;
    auto g = [&](std::span<const double> x) {
        inside = inside && x[0] >= 0 && x[0] <= 1 && x[1] >= 0 && x[1] <= 1;
        return f(x);
    };
    NelderMeadOptions o;
    o.tolerance = 1e-12;
    const auto r = nelder_mead(g, simplex_at({0.2, 0.2}, 0.1), lo, hi, o);
    CHECK(inside);
    CHECK(r.x[0] == 1.0);
    CHECK(std::abs(r.x[1] - 0.5) < 1e-4);
}

TEST_CASE("budget exhaustion returns the best point so far") {
    const std::vector<double> lo{-5, -5}, hi{5, 5};
    int calls = 0;
    auto f = [&](std::span<const double> x) {
        ++calls;
        return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.01 * x[0] * x[0];
    };
    NelderMeadOptions o;
    o.tolerance = 0.0;
    o.max_evals = 25;
    const auto r = nelder_mead(f, simplex_at({2, 2}, 1.0), lo, hi, o);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations == 25);
    CHECK(calls == 25);
    for (const auto& [it, v] : r.trace) CHECK(r.value <= v);
    CHECK(f(r.x) == r.value);
}

TEST_CASE("trace is non-increasing and starts at iteration zero") {
    const std::vector<double> lo{-5, -5}, hi{5, 5};
    auto f = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
    const auto r = nelder_mead(f, simplex_at({3, -2}, 1.0), lo, hi);
    REQUIRE_FALSE(r.trace.empty());
    CHECK(r.trace.front().first == 0);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].second <= r.trace[i - 1].second);
}

TEST_CASE("objective exceptions propagate") {
    const std::vector<double> lo{-1}, hi{1};
    auto f = [](std::span<const double> x) -> double {
        if (x[0] > 0.5) throw NumericalError("boom");
        return -x[0];
    };
    CHECK_THROWS_AS(nelder_mead(f, simplex_at({0.0}, 0.3), lo, hi), NumericalError);
}

TEST_CASE("rejects a malformed simplex") {
    const std::vector<double> lo{0, 0}, hi{1, 1};
    auto f = [](std::span<const double>) { return 0.0; };
    CHECK_THROWS_AS(nelder_mead(f, {{0, 0}, {1, 0}}, lo, hi), ValidationError);
}
