#include "dfwm/optimize.hpp"
#include "dfwm/errors.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

using namespace dfwm;
using Catch::Matchers::WithinAbs;

namespace {

OptimizeOptions quick(int starts, int evals) {
    OptimizeOptions o;
    o.starts = starts;
    o.max_evals = evals;
    return o;
}

bool same(const OptimizationResult& a, const OptimizationResult& b) {
    if (a.best != b.best || a.eta_s != b.eta_s || a.evaluations != b.evaluations || a.best_start != b.best_start ||
        a.starts.size() != b.starts.size())
        return false;
    for (std::size_t i = 0; i < a.starts.size(); ++i)
        if (a.starts[i].trace != b.starts[i].trace || a.starts[i].best != b.starts[i].best) return false;
    return true;
}

}  // namespace

TEST_CASE("Latin hypercube fills one stratum per dimension") {
    const Bounds box;
    const auto pts = latin_hypercube(16, box, 42);
    REQUIRE(pts.size() == 16);
    for (std::size_t d = 0; d < 5; ++d) {
        std::set<int> strata;
        for (const auto& p : pts) {
            CHECK(p[d] >= box.lower[d]);
            CHECK(p[d] < box.upper[d]);
            strata.insert(static_cast<int>((p[d] - box.lower[d]) / (box.upper[d] - box.lower[d]) * 16));
        }
        CHECK(strata.size() == 16);
    }
    CHECK(latin_hypercube(16, box, 42) == pts);
    CHECK(latin_hypercube(16, box, 43) != pts);
    CHECK_THROWS_AS(latin_hypercube(0, box, 1), ValidationError);
}

TEST_CASE("parameter vector order") {
    const DriveConfig d{11.0, 9.0, -1.0, 5.0, -4.0};
    const DriveVector x = to_vector(d);
    CHECK(x == DriveVector{11.0, 9.0, 5.0, -4.0, -1.0});
    CHECK(to_drive(x) == d);
}

TEST_CASE("without a medium nothing converts") {
    const ConfigBundle b = preset("od200");
    const OptimizationResult r = optimize_eta(0.0, b, quick(3, 100));
    CHECK(r.eta_s == 0.0);
    for (const auto& s : r.starts) CHECK(s.eta_s == 0.0);
    CHECK(r.best_start == 0);
}

TEST_CASE("result is deterministic and independent of the thread count") {
    const ConfigBundle b = preset("od200");
    const OptimizeOptions o = quick(3, 120);
    const OptimizationResult a = optimize_eta(75.0, b, o, 1);
    const OptimizationResult c = optimize_eta(75.0, b, o, 1);
    const OptimizationResult t = optimize_eta(75.0, b, o, 3);
    CHECK(same(a, c));
    CHECK(same(a, t));
    CHECK(a.seed == o.seed);
}

TEST_CASE("result invariants") {
    const ConfigBundle b = preset("od200");
    const OptimizationResult r = optimize_eta(110.0, b, quick(4, 150));
    CHECK(r.eta_s >= 0.0);
    CHECK(r.eta_s <= 1.0);
    int evals = 0;
    double best_trace = 0.0;
    for (std::size_t i = 0; i < r.starts.size(); ++i) {
        const StartResult& s = r.starts[i];
        evals += s.evaluations;
        CHECK(s.evaluations <= 150);
        for (const auto& [it, v] : s.trace) best_trace = std::max(best_trace, v);
        if (i < static_cast<std::size_t>(r.best_start)) CHECK(s.eta_s < r.eta_s);
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(s.best[k] >= b.optimize.bounds.lower[k]);
            CHECK(s.best[k] <= b.optimize.bounds.upper[k]);
        }
    }
    CHECK(evals == r.evaluations);
    CHECK(r.eta_s >= best_trace - 1e-12);
    ConfigBundle at = b;
    at.medium.alpha_p = 110.0;
    at.finalize();
    CHECK(eta_s_at(r.best, at) == r.eta_s);
}

TEST_CASE("returned optimum is degenerate under detuning reversal") {
    ConfigBundle b = preset("od200");
    const OptimizationResult r = optimize_eta(75.0, b, quick(2, 200));
    b.medium.alpha_p = 75.0;
    b.finalize();
    DriveVector flipped = r.best;
    for (std::size_t k = 2; k < 5; ++k) flipped[k] = -flipped[k];
    CHECK(std::abs(eta_s_at(flipped, b) - r.eta_s) <= 1e-9);
}

TEST_CASE("invalid search boxes are rejected") {
    const ConfigBundle b = preset("od200");
    OptimizeOptions o = quick(2, 50);
    o.bounds.lower[2] = 5.0;
    o.bounds.upper[2] = -5.0;
    CHECK_THROWS_AS(optimize_eta(75.0, b, o), ValidationError);
    o = quick(2, 50);
    o.bounds.upper[0] = INFINITY;
    CHECK_THROWS_AS(optimize_eta(75.0, b, o), ValidationError);
    o = quick(2, 50);
    o.bounds.lower[1] = -1.0;
    CHECK_THROWS_AS(optimize_eta(75.0, b, o), ValidationError);
    CHECK_THROWS_AS(optimize_eta(75.0, b, quick(0, 50)), ValidationError);
}

TEST_CASE("objective failures report the offending parameters") {
    ConfigBundle b = preset("od200");
    b.rates.gamma21 = 0.0;
    OptimizeOptions o = quick(1, 50);
    // Pin the drive to a bare resonant two-level atom, which is singular at gamma21 = 0.
    o.bounds.lower = {0, 0, 1, 1, 0};
    o.bounds.upper = {0, 0, 2, 2, 0};
    try {
        optimize_eta(10.0, b, o);
        FAIL("expected an objective error");
    } catch (const ObjectiveError& e) {
        CHECK(e.parameters()[0] == 0.0);
        CHECK(e.parameters()[4] == 0.0);
        CHECK(e.exit_code() == 4);
        CHECK(std::string(e.what()).find("delta_p=0") != std::string::npos);
    }
}

TEST_CASE("OD 75 optimum (regression)") {
    const ConfigBundle b = preset("od200");
    const OptimizationResult r = optimize_eta(75.0, b, b.optimize);
    CHECK_THAT(r.eta_s, WithinAbs(0.739899, 1e-5));
    CHECK(r.eta_s >= 0.66);
    CHECK(r.eta_s <= 0.66 + 0.08);
    // Coupling and probe detunings on opposite sides of resonance, as in the published point.
    CHECK(r.best[2] * r.best[4] < 0.0);
}
