#include "dfwm/nelder_mead.hpp"

#include "dfwm/errors.hpp"

#include <algorithm>
#include <numeric>

namespace dfwm {

namespace {

/// Thrown internally when the evaluation budget runs out.
struct BudgetExhausted {};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<std::vector<double>> simplex,
                             std::span<const double> lower, std::span<const double> upper,
                             const NelderMeadOptions& options) {
    const std::size_t n = lower.size();
    if (simplex.size() != n + 1 || upper.size() != n)
        throw ValidationError("simplex", "need n + 1 vertices matching the bounds dimension");

    NelderMeadResult result;
    std::vector<double> values(n + 1);

    auto project = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    };
    auto evaluate = [&](std::vector<double>& x) {
        if (result.evaluations >= options.max_evals) throw BudgetExhausted{};
        project(x);
        ++result.evaluations;
        const double v = f(x);
        // Track the best point seen even if the simplex never adopts it.
        if (result.x.empty() || v < result.value) {
            result.x = x;
            result.value = v;
        }
        return v;
    };
    auto combine = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = from[i] + t * (to[i] - from[i]);
        return p;
    };

    std::vector<std::size_t> order(n + 1);
    try {
        for (std::size_t v = 0; v <= n; ++v) values[v] = evaluate(simplex[v]);
        result.trace.emplace_back(0, result.value);

        while (true) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[n - 1];

            if (values[worst] - values[best] < options.tolerance) {
                result.converged = true;
                break;
            }
            ++result.iterations;

            std::vector<double> centroid(n, 0.0);
            for (std::size_t v = 0; v <= n; ++v) {
                if (v == worst) continue;
                for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / static_cast<double>(n);
            }

            std::vector<double> reflected = combine(centroid, simplex[worst], -options.reflection);
            const double fr = evaluate(reflected);

            bool do_shrink = false;
            if (fr < values[best]) {
                std::vector<double> expanded = combine(centroid, reflected, options.expansion);
                const double fe = evaluate(expanded);
                if (fe < fr) {
                    simplex[worst] = std::move(expanded);
                    values[worst] = fe;
                } else {
                    simplex[worst] = std::move(reflected);
                    values[worst] = fr;
                }
            } else if (fr < values[second]) {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            } else if (fr < values[worst]) {
                std::vector<double> outside = combine(centroid, reflected, options.contraction);
                const double fc = evaluate(outside);
                if (fc <= fr) {
                    simplex[worst] = std::move(outside);
                    values[worst] = fc;
                } else {
                    do_shrink = true;
                }
            } else {
                std::vector<double> inside = combine(centroid, simplex[worst], options.contraction);
                const double fc = evaluate(inside);
                if (fc < values[worst]) {
                    simplex[worst] = std::move(inside);
                    values[worst] = fc;
                } else {
                    do_shrink = true;
                }
            }

            if (do_shrink) {
                const std::vector<double> anchor = simplex[best];
                for (std::size_t v = 0; v <= n; ++v) {
                    if (v == best) continue;
                    simplex[v] = combine(anchor, simplex[v], options.shrink);
                    values[v] = evaluate(simplex[v]);
                }
            }
            result.trace.emplace_back(result.iterations, result.value);
        }
    } catch (const BudgetExhausted&) {
        if (result.trace.empty() || result.trace.back().second != result.value)
            result.trace.emplace_back(result.iterations, result.value);
    }
    return result;
}

}  // namespace dfwm
