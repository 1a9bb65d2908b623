#pragma once

// Domain types shared by every module.
//
// Units: every frequency, rate, Rabi frequency and detuning is expressed in
// units of Gamma = 2*pi * 6 MHz, time in units of 1/Gamma, and position as
// the dimensionless zeta = z/L in [0, 1].

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfwm {

using Complex = std::complex<double>;

namespace units {
/// Gamma / 2pi in MHz.
inline constexpr double gamma_mhz = 6.0;
inline constexpr double gamma_rad_per_s = 2.0 * std::numbers::pi * gamma_mhz * 1e6;
/// Length of one time unit (1/Gamma) in nanoseconds.
inline constexpr double time_unit_ns = 1e9 / gamma_rad_per_s;

constexpr double ns_to_time(double ns) { return ns / time_unit_ns; }
}  // namespace units

/// Population decay (Gamma_*) and coherence decay (gamma_*) rates of the
/// diamond scheme |1> -> {|2>, |3>} -> |4>.
///
/// Default-constructed values are the Rb-87 set: 5P1/2 (0.958), 5P3/2 (1, the
/// unit), 6S1/2 (0.583) branching 0.2 / 0.383 into |2> / |3>. The coherence
/// rates follow gamma_jk = (Gamma_j + Gamma_k) / 2 + gamma_extra with
/// Gamma_1 = 0.
struct RateTable {
    double Gamma2_total = 0.958;
    double Gamma3_total = 1.0;
    double Gamma4_total = 0.583;
    double Gamma21 = 0.958;
    double Gamma31 = 1.0;
    double Gamma42 = 0.2;
    double Gamma43 = 0.383;

    double gamma21 = 0.958 / 2;
    double gamma23 = (0.958 + 1.0) / 2;
    double gamma31 = 1.0 / 2;
    double gamma41 = 0.583 / 2;
    double gamma43 = (0.583 + 1.0) / 2;

    double gamma_extra = 0.0;

    /// Rate table with the coherence rates derived from the totals.
    static RateTable from_totals(double Gamma2_total, double Gamma3_total, double Gamma4_total,
                                 double Gamma21, double Gamma31, double Gamma42, double Gamma43,
                                 double gamma_extra = 0.0);

    /// Simplified variant: every total equal to Gamma, |4> branching 50/50.
    static RateTable uniform();

    /// |2><4| coherence rate. Only the full density-matrix oracle needs it.
    double gamma42() const { return 0.5 * (Gamma4_total + Gamma2_total) + gamma_extra; }

    /// Partial rates sum to the totals (no decay out of the four levels).
    bool closed(double tol = 1e-12) const;

    /// Throws ValidationError naming the offending key(s).
    void validate() const;

    bool operator==(const RateTable&) const = default;
};

struct DriveConfig {
    double omega_c = 0.0;
    double omega_d = 0.0;
    double delta_p = 0.0;
    double delta_c = 0.0;
    double delta_d = 0.0;

    /// Two-photon detuning. Never stored.
    double delta() const { return delta_p + delta_d; }

    bool operator==(const DriveConfig&) const = default;
};

/// How alpha_l enters the propagation equations.
///
/// `intensity`: alpha_l is the intensity optical depth, so a resonant
/// two-level medium transmits exp(-alpha_p) in intensity.
/// `field`: prefactors taken literally as i*gamma*alpha/2 with the half-width
/// gamma_jk, giving exp(-alpha_p / 2).
enum class OdConvention { intensity, field };

struct MediumConfig {
    double alpha_p = 0.0;
    double lambda_p = 795.0;
    double lambda_c = 780.0;
    double lambda_d = 1324.0;
    double lambda_s = 1367.0;
    int n_z = 2001;
    OdConvention od_convention = OdConvention::intensity;

    // Derived from alpha_p, the wavelengths and the rate table at fixed
    // density and length. Filled by derive_depths().
    double alpha_c = 0.0;
    double alpha_s = 0.0;

    void derive_depths(const RateTable& rates);

    /// Factor multiplying i*gamma*alpha in every propagation equation.
    double propagation_factor() const { return od_convention == OdConvention::intensity ? 1.0 : 0.5; }

    bool operator==(const MediumConfig&) const = default;
};

enum class SpectrumMode { fwm, v_type, cascade, two_level };

std::string_view to_string(SpectrumMode mode);
SpectrumMode parse_mode(std::string_view text);
std::string_view to_string(OdConvention convention);

struct SweepOptions {
    SpectrumMode mode = SpectrumMode::fwm;
    double from = -10.0;
    double to = 15.0;
    double step = 0.1;
    /// FWHM of the optional Lorentzian smoothing, Gamma units.
    std::optional<double> linewidth;

    bool operator==(const SweepOptions&) const = default;
};

struct PulseOptions {
    /// 200 ns square pulse.
    double duration = units::ns_to_time(200.0);
    double window_factor = 8.0;
    int samples = 4096;
    double amplitude = 1.0;

    bool operator==(const PulseOptions&) const = default;
};

/// Search box for (omega_c, omega_d, delta_c, delta_d, delta_p).
struct Bounds {
    std::array<double, 5> lower{0.0, 0.0, -15.0, -15.0, -15.0};
    std::array<double, 5> upper{30.0, 30.0, 15.0, 15.0, 15.0};

    bool operator==(const Bounds&) const = default;
};

struct OptimizeOptions {
    int starts = 32;
    std::uint64_t seed = 7;
    int max_evals = 2000;
    double tolerance = 1e-4;
    Bounds bounds;

    bool operator==(const OptimizeOptions&) const = default;
};

/// Everything a run needs. Treat as immutable once validated; the sweep and
/// optimizer work on copies.
struct ConfigBundle {
    RateTable rates;
    MediumConfig medium;
    std::optional<DriveConfig> drive;
    SweepOptions sweep;
    PulseOptions pulse;
    OptimizeOptions optimize;

    /// Throws ValidationError("fields", ...) when no drive is configured.
    const DriveConfig& require_drive() const;

    /// Recomputes derived quantities and checks every invariant.
    void finalize();

    bool operator==(const ConfigBundle&) const = default;
};

/// Parses a JSON config document (sections rates, medium, fields, sweep,
/// pulse, optimize; scalar values only). Missing keys take their defaults,
/// unknown keys are rejected.
ConfigBundle load_config(std::string_view document);
ConfigBundle load_config_file(const std::filesystem::path& path);

/// Canonical JSON form. load_config(dump_config(b)) == b bit for bit.
std::string dump_config(const ConfigBundle& bundle, int indent = 2);

/// fig3 (OD 75), fig4 (OD 110), od200 (OD 200, no drive).
ConfigBundle preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace dfwm
