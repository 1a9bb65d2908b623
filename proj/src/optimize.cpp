#include "dfwm/optimize.hpp"

#include "dfwm/nelder_mead.hpp"
#include "dfwm/parallel.hpp"
#include "dfwm/propagation.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace dfwm {

namespace {

constexpr const char* kNames[5] = {"omega_c", "omega_d", "delta_c", "delta_d", "delta_p"};

// Initial simplex edge as a fraction of each bound range.
constexpr double kSimplexFraction = 0.1;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string describe(const DriveVector& x) {
    std::ostringstream s;
    s.precision(17);
    s << '(';
    for (std::size_t i = 0; i < x.size(); ++i) s << (i ? ", " : "") << kNames[i] << '=' << x[i];
    s << ')';
    return s.str();
}

void check_bounds(const Bounds& b) {
    for (std::size_t i = 0; i < 5; ++i) {
        const std::string key = std::string("optimize.") + kNames[i];
        if (!std::isfinite(b.lower[i]) || !std::isfinite(b.upper[i]))
            throw ValidationError(key + "_min, " + key + "_max", "bounds must be finite");
        if (b.lower[i] > b.upper[i])
            throw ValidationError(key + "_min, " + key + "_max", "lower bound exceeds upper bound");
    }
    if (b.lower[0] < 0.0 || b.lower[1] < 0.0)
        throw ValidationError("optimize.omega_c_min, optimize.omega_d_min", "Rabi frequencies must be >= 0");
}

std::vector<std::vector<double>> initial_simplex(const DriveVector& x0, const Bounds& b) {
    std::vector<std::vector<double>> simplex(6, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < 5; ++i) {
        const double h = kSimplexFraction * (b.upper[i] - b.lower[i]);
        double& v = simplex[i + 1][i];
        v = (v + h <= b.upper[i]) ? v + h : v - h;
    }
    return simplex;
}

}  // namespace

DriveVector to_vector(const DriveConfig& d) { return {d.omega_c, d.omega_d, d.delta_c, d.delta_d, d.delta_p}; }

DriveConfig to_drive(const DriveVector& x) {
    DriveConfig d;
    d.omega_c = x[0];
    d.omega_d = x[1];
    d.delta_c = x[2];
    d.delta_d = x[3];
    d.delta_p = x[4];
    return d;
}

ObjectiveError::ObjectiveError(const DriveVector& x, const std::string& what)
    : NumericalError(what + " at " + describe(x)), x_(x) {}

std::vector<DriveVector> latin_hypercube(int starts, const Bounds& bounds, std::uint64_t seed) {
    if (starts < 1) throw ValidationError("optimize.starts", "need at least one start");
    const auto n = static_cast<std::size_t>(starts);
    std::mt19937_64 rng(seed);
    std::vector<DriveVector> points(n);
    std::vector<std::size_t> strata(n);
    for (std::size_t dim = 0; dim < 5; ++dim) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        // Fisher-Yates by hand so the permutation does not depend on the
        // standard library's shuffle.
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
            std::swap(strata[i - 1], strata[std::min(j, i - 1)]);
        }
        const double lo = bounds.lower[dim];
        const double span = bounds.upper[dim] - lo;
        for (std::size_t k = 0; k < n; ++k) {
            const double u = (static_cast<double>(strata[k]) + uniform01(rng)) / static_cast<double>(n);
            points[k][dim] = lo + span * u;
        }
    }
    return points;
}

double eta_s_at(const DriveVector& x, const ConfigBundle& bundle) {
    double eta = 0.0;
    try {
        eta = Medium(bundle.rates, bundle.medium, to_drive(x)).observables().eta_s;
    } catch (const ObjectiveError&) {
        throw;
    } catch (const std::exception& e) {
        throw ObjectiveError(x, e.what());
    }
    if (!std::isfinite(eta)) throw ObjectiveError(x, "eta_s is not finite");
    return eta;
}

OptimizationResult optimize_eta(double alpha_p, const ConfigBundle& base, const OptimizeOptions& options,
                                int threads) {
    check_bounds(options.bounds);
    if (options.max_evals < 6) throw ValidationError("optimize.max_evals", "need at least 6 evaluations");
    if (!(options.tolerance > 0.0)) throw ValidationError("optimize.tolerance", "must be > 0");

    ConfigBundle bundle = base;
    bundle.medium.alpha_p = alpha_p;
    bundle.finalize();

    const std::vector<DriveVector> seeds = latin_hypercube(options.starts, options.bounds, options.seed);

    OptimizationResult result;
    result.seed = options.seed;
    result.starts.resize(seeds.size());

    NelderMeadOptions nm;
    nm.tolerance = options.tolerance;
    nm.max_evals = options.max_evals;

    parallel_for(seeds.size(), threads, [&](std::size_t s) {
        auto objective = [&](std::span<const double> p) {
            DriveVector x;
            std::copy(p.begin(), p.end(), x.begin());
            return -eta_s_at(x, bundle);
        };
        const NelderMeadResult r = nelder_mead(objective, initial_simplex(seeds[s], options.bounds),
                                               options.bounds.lower, options.bounds.upper, nm);
        StartResult& out = result.starts[s];
        out.start = seeds[s];
        std::copy(r.x.begin(), r.x.end(), out.best.begin());
        out.eta_s = -r.value;
        out.evaluations = r.evaluations;
        out.converged = r.converged;
        out.trace.reserve(r.trace.size());
        for (const auto& [it, v] : r.trace) out.trace.emplace_back(it, -v);
    });

    for (std::size_t s = 0; s < result.starts.size(); ++s) {
        const StartResult& st = result.starts[s];
        result.evaluations += st.evaluations;
        // Strict comparison: the lowest start index wins ties.
        if (s == 0 || st.eta_s > result.eta_s) {
            result.eta_s = st.eta_s;
            result.best = st.best;
            result.best_start = static_cast<int>(s);
        }
    }
    return result;
}

OptimizationResult optimize_eta(const ConfigBundle& bundle, int threads) {
    return optimize_eta(bundle.medium.alpha_p, bundle, bundle.optimize, threads);
}

}  // namespace dfwm
