#pragma once

// Time-domain propagation of a probe pulse by spectral synthesis: the input
// envelope's discrete spectrum is multiplied by A(omega) (probe) and
// C(omega) (generated signal) and transformed back.

#include "dfwm/config.hpp"
#include "dfwm/propagation.hpp"

#include <vector>

namespace dfwm {

enum class PulseShape { square };

struct PulseResult {
    /// Time in units of 1/Gamma, pulse onset at t = 0.
    std::vector<double> time;
    /// Intensity envelopes relative to a unit-amplitude input.
    std::vector<double> input_probe;
    std::vector<double> output_probe;
    std::vector<double> output_signal;

    double duration = 0.0;
    /// Means over the final third of the pulse.
    double plateau_probe = 0.0;
    double plateau_signal = 0.0;
    /// Steady-state (omega = 0) values for comparison.
    Observables cw;
    /// Plateau within 1% (relative) of eta_s and within 0.01 of T_p.
    bool converged = false;
};

/// Pulse of `options.duration` through the medium described by `bundle`
/// (drive required). Throws ValidationError when the window is shorter than
/// 4x the duration or the frequency span is below +-40 Gamma.
PulseResult propagate_pulse(PulseShape shape, const PulseOptions& options, const ConfigBundle& bundle,
                            int threads = 1);

}  // namespace dfwm
