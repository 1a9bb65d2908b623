#include "dfwm/pulse.hpp"

#include "dfwm/errors.hpp"
#include "dfwm/parallel.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace dfwm {

PulseResult propagate_pulse(PulseShape shape, const PulseOptions& options, const ConfigBundle& bundle,
                            int threads) {
    if (shape != PulseShape::square) throw ValidationError("pulse.shape", "only square pulses");
    if (!(options.duration > 0.0)) throw ValidationError("pulse.duration", "must be > 0");
    if (options.window_factor < 4.0)
        throw ValidationError("pulse.window_factor",
                              "window shorter than 4x the pulse duration aliases the response");
    const int n = options.samples;
    const double window = options.window_factor * options.duration;
    const double dt = window / n;
    const double span = std::numbers::pi / dt;
    if (span < 40.0)
        throw ValidationError("pulse.samples",
                              "frequency grid spans only +-" + std::to_string(span) + " Gamma (< 40)");

    const Medium medium(bundle);

    PulseResult out;
    out.duration = options.duration;
    out.cw = medium.observables();

    const auto N = static_cast<std::size_t>(n);
    const long onset = std::lround(options.duration / dt);
    const long width = std::max(1L, std::lround(options.duration / dt));

    std::vector<Complex> input(N);
    out.time.resize(N);
    out.input_probe.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        const long rel = static_cast<long>(k) - onset;
        out.time[k] = static_cast<double>(rel) * dt;
        const bool on = rel >= 0 && rel < width;
        input[k] = on ? options.amplitude : 0.0;
        out.input_probe[k] = std::norm(input[k]);
    }

    Eigen::FFT<double> fft;
    std::vector<Complex> spectrum;
    fft.fwd(spectrum, input);

    // Bin k evolves as exp(+2 pi i k n / N) = exp(-i omega t) with
    // omega = -2 pi k_signed / window.
    std::vector<Complex> probe_spec(N), signal_spec(N);
    parallel_for(N, threads, [&](std::size_t k) {
        const long signed_k = k < N / 2 ? static_cast<long>(k) : static_cast<long>(k) - n;
        const double omega = -2.0 * std::numbers::pi * static_cast<double>(signed_k) / window;
        const TransferMatrix t = medium.transfer(omega);
        probe_spec[k] = t.a * spectrum[k];
        signal_spec[k] = t.c * spectrum[k];
    });

    std::vector<Complex> probe_t, signal_t;
    fft.inv(probe_t, probe_spec);
    fft.inv(signal_t, signal_spec);
    out.output_probe.resize(N);
    out.output_signal.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        out.output_probe[k] = std::norm(probe_t[k]);
        out.output_signal[k] = std::norm(signal_t[k]);
    }

    // Final third of the pulse, at least one sample.
    const long tail_begin = onset + std::min(width - 1, (2 * width) / 3);
    const long tail_end = onset + width;
    double sum_p = 0.0, sum_s = 0.0;
    for (long k = tail_begin; k < tail_end; ++k) {
        sum_p += out.output_probe[static_cast<std::size_t>(k)];
        sum_s += out.output_signal[static_cast<std::size_t>(k)];
    }
    const double count = static_cast<double>(tail_end - tail_begin);
    const double level = options.amplitude * options.amplitude;
    out.plateau_probe = sum_p / count;
    out.plateau_signal = sum_s / count;

    if (level > 0.0) {
        const double eta = out.cw.eta_s * level;
        const bool signal_ok = eta > 1e-9 ? std::abs(out.plateau_signal - eta) <= 0.01 * eta
                                          : out.plateau_signal <= 1e-6 * level;
        const bool probe_ok = std::abs(out.plateau_probe - out.cw.T_p * level) <= 0.01 * level;
        out.converged = signal_ok && probe_ok;
    } else {
        out.converged = true;
    }
    return out;
}

}  // namespace dfwm
