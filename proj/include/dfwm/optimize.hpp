#pragma once

// Multi-start search for the drive that maximizes eta_s at fixed optical depth.
// Parameter order everywhere: (omega_c, omega_d, delta_c, delta_d, delta_p).

#include "dfwm/config.hpp"
#include "dfwm/errors.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace dfwm {

using DriveVector = std::array<double, 5>;

DriveVector to_vector(const DriveConfig& drive);
DriveConfig to_drive(const DriveVector& x);

/// An objective evaluation failed; carries the point that triggered it.
class ObjectiveError : public NumericalError {
public:
    ObjectiveError(const DriveVector& x, const std::string& what);
    const DriveVector& parameters() const noexcept { return x_; }

private:
    DriveVector x_;
};

struct StartResult {
    DriveVector start{};
    DriveVector best{};
    double eta_s = 0.0;
    int evaluations = 0;
    bool converged = false;
    /// (iteration, eta_s of the best point so far).
    std::vector<std::pair<int, double>> trace;
};

struct OptimizationResult {
    DriveVector best{};
    double eta_s = 0.0;
    /// Start that produced `best`.
    int best_start = 0;
    std::uint64_t seed = 0;
    int evaluations = 0;
    std::vector<StartResult> starts;

    DriveConfig drive() const { return to_drive(best); }
};

/// `starts` Latin-hypercube points inside `bounds`, one per row.
std::vector<DriveVector> latin_hypercube(int starts, const Bounds& bounds, std::uint64_t seed);

/// Maximizes eta_s over the box at the bundle's rates and medium, with
/// alpha_p replaced by `alpha_p`. Bit-for-bit deterministic for fixed inputs
/// regardless of `threads`.
OptimizationResult optimize_eta(double alpha_p, const ConfigBundle& base, const OptimizeOptions& options,
                                int threads = 1);

/// Uses bundle.medium.alpha_p and bundle.optimize.
OptimizationResult optimize_eta(const ConfigBundle& bundle, int threads = 1);

/// eta_s at one parameter vector.
double eta_s_at(const DriveVector& x, const ConfigBundle& bundle);

}  // namespace dfwm
