#pragma once

// Invariant suite run by `dfwm validate`. Each check reports its worst-case
// metric against a threshold; numerical errors are not caught here and
// propagate to the caller.

#include "dfwm/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dfwm {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    /// Worst value found; passes when metric <= threshold.
    double metric = 0.0;
    double threshold = 0.0;
    int points = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    /// True when no check failed (skipped checks count as passing).
    bool passed() const;
    const CheckResult* find(const std::string& name) const;
};

struct ValidationOptions {
    int passivity_delta_points = 50;
    int passivity_omega_points = 10;
    double passivity_delta_from = -10.0;
    double passivity_delta_to = 15.0;
    double passivity_omega_max = 5.0;
    int oracle_samples = 20;
    std::uint64_t oracle_seed = 2024;
    bool pulse = true;
};

// Individual checks. All take a finalized bundle with a drive.
CheckResult check_passivity(const ConfigBundle& bundle, const ValidationOptions& options, int threads = 1);
CheckResult check_detuning_symmetry(const ConfigBundle& bundle, int threads = 1);
CheckResult check_oracle(const ConfigBundle& bundle, const ValidationOptions& options, int threads = 1);
CheckResult check_zeroth_order(const ConfigBundle& bundle, const ValidationOptions& options);
CheckResult check_grid_convergence(const ConfigBundle& bundle);
CheckResult check_compositionality(const ConfigBundle& bundle);
/// Resonant two-level transmission against exp(-f alpha_p), f the
/// propagation factor of the configured convention.
CheckResult check_two_level_beer(const ConfigBundle& bundle);
CheckResult check_pulse_plateau(const ConfigBundle& bundle, int threads = 1);

ValidationReport run_validation(const ConfigBundle& bundle, const ValidationOptions& options = {},
                                int threads = 1);

}  // namespace dfwm
