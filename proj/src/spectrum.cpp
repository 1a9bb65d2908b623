#include "dfwm/spectrum.hpp"

#include "dfwm/errors.hpp"
#include "dfwm/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace dfwm {

namespace {

template <class Get>
std::vector<double> column(const std::vector<SpectrumRow>& rows, Get get) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(get(r));
    return out;
}

}  // namespace

std::vector<double> SpectrumTable::delta_p() const {
    return column(rows, [](const SpectrumRow& r) { return r.delta_p; });
}
std::vector<double> SpectrumTable::T_p() const {
    return column(rows, [](const SpectrumRow& r) { return r.obs.T_p; });
}
std::vector<double> SpectrumTable::eta_s() const {
    return column(rows, [](const SpectrumRow& r) { return r.obs.eta_s; });
}
std::vector<double> SpectrumTable::T_s() const {
    return column(rows, [](const SpectrumRow& r) { return r.obs.T_s; });
}
std::vector<double> SpectrumTable::eta_p() const {
    return column(rows, [](const SpectrumRow& r) { return r.obs.eta_p; });
}

std::vector<double> sweep_grid(double from, double to, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("sweep.step", "must be > 0");
    if (!std::isfinite(from) || !std::isfinite(to) || to < from)
        throw ValidationError("sweep.from, sweep.to", "empty sweep range");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = from + static_cast<double>(i) * step;
    return grid;
}

SpectrumTable spectrum_sweep(SpectrumMode mode, double from, double to, double step,
                             const ConfigBundle& bundle, std::optional<double> linewidth,
                             int threads) {
    const std::vector<double> grid = sweep_grid(from, to, step);
    if (linewidth && !(*linewidth > 0.0)) throw ValidationError("linewidth", "must be > 0");

    const DriveConfig drive = apply_mode(bundle.require_drive(), mode);
    const Medium base(bundle.rates, bundle.medium, drive);

    SpectrumTable table;
    table.mode = mode;
    table.rows.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        table.rows[i] = SpectrumRow{grid[i], base.with_probe_detuning(grid[i]).observables()};
    });

    if (linewidth) {
        table.linewidth = linewidth;
        table.T_p_smoothed = lorentzian_smooth(grid, table.T_p(), *linewidth);
        table.eta_s_smoothed = lorentzian_smooth(grid, table.eta_s(), *linewidth);
    }
    return table;
}

SpectrumTable spectrum_sweep(const ConfigBundle& bundle, int threads) {
    const SweepOptions& s = bundle.sweep;
    return spectrum_sweep(s.mode, s.from, s.to, s.step, bundle, s.linewidth, threads);
}

std::vector<double> lorentzian_smooth(std::span<const double> x, std::span<const double> y,
                                      double fwhm) {
    if (!(fwhm > 0.0)) throw ValidationError("linewidth", "must be > 0");
    const double hw = 0.5 * fwhm;
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[i] - x[j];
            const double w = hw / (d * d + hw * hw);
            num += w * y[j];
            den += w;
        }
        out[i] = num / den;
    }
    return out;
}

std::optional<std::size_t> transparency_peak(std::span<const double> v) {
    std::optional<std::size_t> best;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        // Rising edge into i, then a (possibly flat) top that eventually falls.
        if (!(v[i] > v[i - 1])) continue;
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        if (j + 1 >= v.size() || !(v[j + 1] < v[i])) continue;
        if (!best || v[i] > v[*best]) best = i;
    }
    return best;
}

std::size_t argmax(std::span<const double> v) {
    return static_cast<std::size_t>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

}  // namespace dfwm
