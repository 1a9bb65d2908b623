#pragma once

// Bounded Nelder-Mead minimizer. Candidate points are projected onto the box
// before evaluation.

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dfwm {

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    /// Stop once f(worst) - f(best) < tolerance.
    double tolerance = 1e-4;
    /// Evaluation budget; when exhausted the best point so far is returned.
    int max_evals = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;
    /// (iteration, best value after that iteration); iteration 0 is the
    /// initial simplex.
    std::vector<std::pair<int, double>> trace;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` starting from `simplex` (n + 1 vertices of dimension n).
NelderMeadResult nelder_mead(const Objective& f, std::vector<std::vector<double>> simplex,
                             std::span<const double> lower, std::span<const double> upper,
                             const NelderMeadOptions& options = {});

}  // namespace dfwm
