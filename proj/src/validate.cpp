#include "dfwm/validate.hpp"

#include "dfwm/atom.hpp"
#include "dfwm/errors.hpp"
#include "dfwm/optimize.hpp"
#include "dfwm/oracle.hpp"
#include "dfwm/parallel.hpp"
#include "dfwm/propagation.hpp"
#include "dfwm/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace dfwm {

namespace {

CheckResult make(std::string name, double metric, double threshold, int points, std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.metric = metric;
    c.threshold = threshold;
    c.points = points;
    c.passed = metric <= threshold;
    c.detail = std::move(detail);
    return c;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

double max_element_diff(const TransferMatrix& x, const TransferMatrix& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

double max_observable_diff(const Observables& x, const Observables& y) {
    return std::max({std::abs(x.T_p - y.T_p), std::abs(x.eta_s - y.eta_s), std::abs(x.T_s - y.T_s),
                     std::abs(x.eta_p - y.eta_p)});
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::vector<DriveVector> random_drives(const ValidationOptions& options) {
    // Same box as the optimizer's default search space.
    const Bounds box;
    std::mt19937_64 rng(options.oracle_seed);
    std::vector<DriveVector> out(static_cast<std::size_t>(options.oracle_samples));
    for (auto& x : out)
        for (std::size_t i = 0; i < 5; ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            x[i] = box.lower[i] + u * (box.upper[i] - box.lower[i]);
        }
    return out;
}

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.skipped; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

CheckResult check_passivity(const ConfigBundle& bundle, const ValidationOptions& o, int threads) {
    const Medium medium(bundle);
    const auto deltas = linspace(o.passivity_delta_from, o.passivity_delta_to, o.passivity_delta_points);
    const auto omegas = linspace(-o.passivity_omega_max, o.passivity_omega_max, o.passivity_omega_points);
    std::vector<double> worst(deltas.size(), -1.0);
    std::vector<double> worst_omega(deltas.size(), 0.0);
    parallel_for(deltas.size(), threads, [&](std::size_t i) {
        const Medium m = medium.with_probe_detuning(deltas[i]);
        for (const double w : omegas) {
            const TransferMatrix t = m.transfer(w);
            const double probe_in = std::norm(t.a) + std::norm(t.c);
            const double signal_in = std::norm(t.b) + std::norm(t.d);
            const double v = std::max(probe_in, signal_in) - 1.0;
            if (v > worst[i]) {
                worst[i] = v;
                worst_omega[i] = w;
            }
        }
    });
    const std::size_t k = static_cast<std::size_t>(std::max_element(worst.begin(), worst.end()) - worst.begin());
    return make("passivity", worst[k], 1e-9, static_cast<int>(deltas.size() * omegas.size()),
                "max(|A|^2+|C|^2, |B|^2+|D|^2) - 1, worst at delta_p=" + fmt(deltas[k]) +
                    " omega=" + fmt(worst_omega[k]));
}

CheckResult check_detuning_symmetry(const ConfigBundle& bundle, int threads) {
    const DriveConfig& d = bundle.require_drive();
    DriveConfig flipped = d;
    flipped.delta_c = -d.delta_c;
    flipped.delta_d = -d.delta_d;
    const Medium forward(bundle.rates, bundle.medium, d);
    const Medium mirror(bundle.rates, bundle.medium, flipped);
    const auto deltas = linspace(bundle.sweep.from, bundle.sweep.to, 26);
    std::vector<double> diff(deltas.size());
    parallel_for(deltas.size(), threads, [&](std::size_t i) {
        const Observables a = forward.with_probe_detuning(deltas[i]).observables();
        const Observables b = mirror.with_probe_detuning(-deltas[i]).observables();
        diff[i] = std::max(std::abs(a.eta_s - b.eta_s), std::abs(a.T_p - b.T_p));
    });
    return make("detuning_symmetry", *std::max_element(diff.begin(), diff.end()), 1e-9,
                static_cast<int>(deltas.size()), "max |eta_s|, |T_p| difference under (delta_c, delta_d, delta_p) -> -(...)");
}

CheckResult check_oracle(const ConfigBundle& bundle, const ValidationOptions& o, int threads) {
    if (!bundle.rates.closed()) {
        CheckResult c = make("oracle", 0.0, 1e-6, 0, "rate table is not closed; the oracle needs a closed scheme");
        c.skipped = true;
        return c;
    }
    const auto drives = random_drives(o);
    std::vector<double> err(drives.size());
    parallel_for(drives.size(), threads, [&](std::size_t i) {
        const DriveConfig d = to_drive(drives[i]);
        const ZerothOrderState z = two_level_steady_state(d.omega_c, d.delta_c, bundle.rates);
        const ResponseMatrix x = linear_response(0.0, d, d.omega_c, z, bundle.rates);
        const ResponseMatrix y = oracle_response(d, d.omega_c, bundle.rates);
        const double scale = std::max({std::abs(y.chi_pp), std::abs(y.chi_ps), std::abs(y.chi_sp), std::abs(y.chi_ss)});
        const double diff = std::max({std::abs(x.chi_pp - y.chi_pp), std::abs(x.chi_ps - y.chi_ps),
                                      std::abs(x.chi_sp - y.chi_sp), std::abs(x.chi_ss - y.chi_ss)});
        err[i] = diff / scale;
    });
    return make("oracle", *std::max_element(err.begin(), err.end()), 1e-6, static_cast<int>(drives.size()),
                "max relative chi deviation from the 16x16 steady state (probe Rabi 1e-3, extrapolated)");
}

CheckResult check_zeroth_order(const ConfigBundle& bundle, const ValidationOptions& o) {
    if (!bundle.rates.closed()) {
        CheckResult c = make("zeroth_order", 0.0, 1e-10, 0, "rate table is not closed");
        c.skipped = true;
        return c;
    }
    double worst = 0.0;
    const auto drives = random_drives(o);
    for (const auto& x : drives) {
        const DriveConfig d = to_drive(x);
        const ZerothOrderState z = two_level_steady_state(d.omega_c, d.delta_c, bundle.rates);
        const DensityMatrix rho = liouvillian_oracle(d, d.omega_c, bundle.rates, 0.0, 0.0);
        worst = std::max({worst, std::abs(rho(2, 2).real() - z.rho33), std::abs(rho(2, 0) - z.rho31)});
    }
    return make("zeroth_order", worst, 1e-10, static_cast<int>(drives.size()),
                "max |rho33|, |rho31| deviation of the closed form from the full steady state");
}

CheckResult check_grid_convergence(const ConfigBundle& bundle) {
    ConfigBundle fine = bundle;
    fine.medium.n_z = 2 * bundle.medium.n_z - 1;
    const Observables a = observables_at(bundle);
    const Observables b = observables_at(fine);
    return make("grid_convergence", max_observable_diff(a, b), 1e-6, 2,
                "max observable change from n_z=" + std::to_string(bundle.medium.n_z) + " to " +
                    std::to_string(fine.medium.n_z));
}

CheckResult check_compositionality(const ConfigBundle& bundle) {
    const Medium m(bundle);
    const int n = bundle.medium.n_z;
    const double mid = static_cast<double>((n - 1) / 2) / (n - 1);
    double worst = 0.0;
    const double omegas[] = {0.0, 0.7, -2.3};
    for (const double w : omegas) {
        const TransferMatrix whole = m.transfer(w);
        const TransferMatrix split = m.transfer(w, mid, 1.0) * m.transfer(w, 0.0, mid);
        worst = std::max(worst, max_element_diff(whole, split));
    }
    return make("compositionality", worst, 1e-8, 3, "max |T(0,1) - T(mid,1) T(0,mid)| at zeta_mid=" + fmt(mid));
}

CheckResult check_two_level_beer(const ConfigBundle& bundle) {
    DriveConfig d = apply_mode(bundle.require_drive(), SpectrumMode::two_level);
    d.delta_p = 0.0;
    const double f = bundle.medium.propagation_factor();
    double worst = 0.0;
    const double depths[] = {1.0, bundle.medium.alpha_p};
    for (const double alpha : depths) {
        MediumConfig medium = bundle.medium;
        medium.alpha_p = alpha;
        medium.derive_depths(bundle.rates);
        const double t = Medium(bundle.rates, medium, d).observables().T_p;
        worst = std::max(worst, std::abs(t - std::exp(-f * alpha)));
    }
    return make("two_level_beer", worst, 1e-6, 2,
                "resonant |A|^2 vs exp(-" + fmt(f) + " alpha_p) at alpha_p = 1 and " + fmt(bundle.medium.alpha_p) +
                    " (" + std::string(to_string(bundle.medium.od_convention)) + " convention)");
}

CheckResult check_pulse_plateau(const ConfigBundle& bundle, int threads) {
    const PulseResult p = propagate_pulse(PulseShape::square, bundle.pulse, bundle, threads);
    const double rel = p.cw.eta_s > 0.0 ? std::abs(p.plateau_signal - p.cw.eta_s) / p.cw.eta_s
                                        : std::abs(p.plateau_signal);
    return make("pulse_plateau", rel, 0.01, static_cast<int>(p.time.size()),
                "relative signal plateau deviation from CW eta_s=" + fmt(p.cw.eta_s) + " (plateau " +
                    fmt(p.plateau_signal) + ")");
}

ValidationReport run_validation(const ConfigBundle& bundle, const ValidationOptions& options, int threads) {
    bundle.require_drive();
    ValidationReport r;
    r.checks.push_back(check_two_level_beer(bundle));
    r.checks.push_back(check_passivity(bundle, options, threads));
    r.checks.push_back(check_detuning_symmetry(bundle, threads));
    r.checks.push_back(check_zeroth_order(bundle, options));
    r.checks.push_back(check_oracle(bundle, options, threads));
    r.checks.push_back(check_grid_convergence(bundle));
    r.checks.push_back(check_compositionality(bundle));
    if (options.pulse) r.checks.push_back(check_pulse_plateau(bundle, threads));
    return r;
}

}  // namespace dfwm
