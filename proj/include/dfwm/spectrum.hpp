#pragma once

#include "dfwm/config.hpp"
#include "dfwm/propagation.hpp"

#include <optional>
#include <span>
#include <vector>

namespace dfwm {

struct SpectrumRow {
    double delta_p = 0.0;
    Observables obs;
};

struct SpectrumTable {
    SpectrumMode mode = SpectrumMode::fwm;
    std::vector<SpectrumRow> rows;
    /// Set when a linewidth was requested; then the two smoothed columns have
    /// one entry per row.
    std::optional<double> linewidth;
    std::vector<double> T_p_smoothed;
    std::vector<double> eta_s_smoothed;

    std::vector<double> delta_p() const;
    std::vector<double> T_p() const;
    std::vector<double> eta_s() const;
    std::vector<double> T_s() const;
    std::vector<double> eta_p() const;
};

/// from, from + step, ... up to `to` (inclusive within 1e-9 step).
/// Throws ValidationError on an empty range or non-positive step.
std::vector<double> sweep_grid(double from, double to, double step);

/// One observables row per probe detuning with the fields of `mode`
/// switched off. `linewidth` (FWHM, Gamma units) adds Lorentzian-smoothed
/// T_p and eta_s columns.
SpectrumTable spectrum_sweep(SpectrumMode mode, double from, double to, double step,
                             const ConfigBundle& bundle, std::optional<double> linewidth = {},
                             int threads = 1);

/// Sweep driven entirely by bundle.sweep.
SpectrumTable spectrum_sweep(const ConfigBundle& bundle, int threads = 1);

/// Convolution with a unit-area Lorentzian of the given FWHM, renormalized
/// at each point over the finite sample set.
std::vector<double> lorentzian_smooth(std::span<const double> x, std::span<const double> y,
                                      double fwhm);

/// Index of the highest interior local maximum, if any.
std::optional<std::size_t> transparency_peak(std::span<const double> values);

std::size_t argmax(std::span<const double> values);

}  // namespace dfwm
