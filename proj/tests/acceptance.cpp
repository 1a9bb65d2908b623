// Acceptance criteria: one PASS/FAIL line each, exit status 1 if any fails.

#include "dfwm/optimize.hpp"
#include "dfwm/oracle.hpp"
#include "dfwm/parallel.hpp"
#include "dfwm/pulse.hpp"
#include "dfwm/spectrum.hpp"
#include "dfwm/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace dfwm;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

void criterion(int n, const char* title, double budget_s, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", s);
    if (budget_s > 0 && s > budget_s) {
        v.pass = false;
        timing += fmt(" > budget %.0f s", budget_s);
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %d: %s | %s [%s]\n", v.pass ? "PASS" : "FAIL", n, title, v.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
}

ConfigBundle at(const char* name, double delta_p) {
    ConfigBundle b = preset(name);
    b.drive->delta_p = delta_p;
    return b;
}

Verdict operating_point(const char* name, double delta_p, double target) {
    const Observables o = observables_at(at(name, delta_p));
    return {std::abs(o.eta_s - target) <= 0.08,
            fmt("eta_s = %.6f, target %.2f +- 0.08 (T_p %.4f, eta_p %.4f)", o.eta_s, target, o.T_p, o.eta_p)};
}

double peak_position(SpectrumMode mode, const ConfigBundle& b, double* global) {
    const SpectrumTable t = spectrum_sweep(mode, -10, 15, 0.05, b, {}, default_threads());
    const auto tp = t.T_p();
    if (global) *global = t.rows[argmax(tp)].delta_p;
    const auto peak = transparency_peak(tp);
    if (!peak) throw std::runtime_error("no interior T_p maximum in the sweep");
    return t.rows[*peak].delta_p;
}

double max_rel(const ResponseMatrix& x, const ResponseMatrix& y) {
    const double s = std::max({std::abs(y.chi_pp), std::abs(y.chi_ps), std::abs(y.chi_sp), std::abs(y.chi_ss)});
    return std::max({std::abs(x.chi_pp - y.chi_pp), std::abs(x.chi_ps - y.chi_ps), std::abs(x.chi_sp - y.chi_sp),
                     std::abs(x.chi_ss - y.chi_ss)}) /
           s;
}

}  // namespace

int main() {
    const int threads = default_threads();
    const ConfigBundle od = preset("od200");
    double eta75 = 0.0, eta110 = 0.0;

    criterion(1, "fig3 operating point (delta_p = -1)", 1.0, [] { return operating_point("fig3", -1.0, 0.66); });
    criterion(2, "fig4 operating point (delta_p = -4)", 1.0, [] { return operating_point("fig4", -4.0, 0.80); });

    criterion(3, "OD 200 optimization", 600.0, [&] {
        const OptimizationResult r = optimize_eta(200.0, od, od.optimize, threads);
        return Verdict{std::abs(r.eta_s - 0.90) <= 0.05,
                       fmt("eta_s = %.6f, target 0.90 +- 0.05 at (%.3f, %.3f, %.3f, %.3f, %.3f), %d starts, seed %llu",
                           r.eta_s, r.best[0], r.best[1], r.best[2], r.best[3], r.best[4], od.optimize.starts,
                           static_cast<unsigned long long>(r.seed))};
    });

    criterion(4, "V-type transparency peak within 1 Gamma of delta_c", 0.0, [] {
        Verdict v{true, ""};
        for (const char* name : {"fig3", "fig4"}) {
            const ConfigBundle b = preset(name);
            double global = 0.0;
            const double p = peak_position(SpectrumMode::v_type, b, &global);
            const bool ok = std::abs(p - b.drive->delta_c) <= 1.0;
            v.pass = v.pass && ok;
            v.detail += fmt("%s%s peak %.2f vs delta_c %.0f (sweep argmax %.2f)", v.detail.empty() ? "" : "; ", name,
                            p, b.drive->delta_c, global);
        }
        return v;
    });

    criterion(5, "cascade transparency peak in [-delta_d/2, -delta_d]", 0.0, [] {
        const ConfigBundle b = preset("fig3");
        double global = 0.0;
        const double p = peak_position(SpectrumMode::cascade, b, &global);
        const double lo = -b.drive->delta_d / 2, hi = -b.drive->delta_d;
        return Verdict{p >= lo && p <= hi, fmt("fig3 peak %.2f in [%.1f, %.1f] (sweep argmax %.2f)", p, lo, hi, global)};
    });

    criterion(6, "up/down conversion reciprocity at the optimal delta_p", 0.0, [&] {
        Verdict v{true, ""};
        for (const char* name : {"fig3", "fig4"}) {
            const SpectrumTable t = spectrum_sweep(SpectrumMode::fwm, -10, 15, 0.05, preset(name), {}, threads);
            const auto eta = t.eta_s();
            const SpectrumRow& row = t.rows[argmax(eta)];
            const double gap = std::abs(row.obs.eta_p - row.obs.eta_s);
            v.pass = v.pass && gap <= 0.05;
            v.detail += fmt("%s%s delta_p %.2f: eta_s %.4f eta_p %.4f |diff| %.4f", v.detail.empty() ? "" : "; ",
                            name, row.delta_p, row.obs.eta_s, row.obs.eta_p, gap);
        }
        return v;
    });

    criterion(7, "detuning-sign symmetry of eta_s and T_p spectra", 0.0, [&] {
        double worst = 0.0;
        for (const char* name : {"fig3", "fig4"}) {
            const ConfigBundle b = preset(name);
            ConfigBundle f = b;
            f.drive->delta_c = -b.drive->delta_c;
            f.drive->delta_d = -b.drive->delta_d;
            const SpectrumTable x = spectrum_sweep(SpectrumMode::fwm, -15, 15, 0.1, b, {}, threads);
            const SpectrumTable y = spectrum_sweep(SpectrumMode::fwm, -15, 15, 0.1, f, {}, threads);
            const std::size_t n = x.rows.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Observables& a = x.rows[i].obs;
                const Observables& c = y.rows[n - 1 - i].obs;
                worst = std::max({worst, std::abs(a.eta_s - c.eta_s), std::abs(a.T_p - c.T_p)});
            }
        }
        return Verdict{worst <= 1e-9, fmt("max pointwise difference %.3e (limit 1e-9), 301 points x 2 presets", worst)};
    });

    criterion(8, "linear response vs 16x16 Liouvillian steady state", 0.0, [] {
        const RateTable r;
        const Bounds box;
        std::mt19937_64 rng(2024);
        double extrapolated = 0.0, raw = 0.0;
        for (int i = 0; i < 20; ++i) {
            DriveVector x;
            for (std::size_t k = 0; k < 5; ++k)
                x[k] = box.lower[k] + static_cast<double>(rng() >> 11) * 0x1.0p-53 * (box.upper[k] - box.lower[k]);
            const DriveConfig d = to_drive(x);
            const ResponseMatrix chi =
                linear_response(0.0, d, d.omega_c, two_level_steady_state(d.omega_c, d.delta_c, r), r);
            extrapolated = std::max(extrapolated, max_rel(chi, oracle_response(d, d.omega_c, r, 1e-3)));
            raw = std::max(raw, max_rel(chi, oracle_response_raw(d, d.omega_c, r, 1e-3)));
        }
        return Verdict{extrapolated <= 1e-6,
                       fmt("20 random drives: max relative deviation %.3e (limit 1e-6) with the O(Omega_p^2) "
                           "saturation term removed; raw ratio at Omega_p = 1e-3 deviates %.3e",
                           extrapolated, raw)};
    });

    criterion(9, "property suite", 0.0, [&] {
        Verdict v{true, ""};
        auto add = [&](bool ok, const std::string& s) {
            v.pass = v.pass && ok;
            v.detail += (v.detail.empty() ? "" : "; ") + std::string(ok ? "ok " : "FAILED ") + s;
        };
        ValidationOptions opts;
        double passivity = -1.0, compose = 0.0, grid = 0.0, plateau = 0.0;
        for (const char* name : {"fig3", "fig4"}) {
            const ConfigBundle b = preset(name);
            passivity = std::max(passivity, check_passivity(b, opts, threads).metric);
            compose = std::max(compose, check_compositionality(b).metric);
            grid = std::max(grid, check_grid_convergence(b).metric);
            plateau = std::max(plateau, check_pulse_plateau(b, threads).metric);
        }
        add(passivity <= 1e-9, fmt("passivity max(|A|^2+|C|^2)-1 = %.2e over 50x10 per preset", passivity));
        add(compose <= 1e-8, fmt("compositionality %.2e", compose));
        add(grid < 1e-6, fmt("grid convergence %.2e", grid));

        // Resonant two-level transmission against exp(-alpha_p/2), at depths where
        // the comparison is not trivially below the tolerance.
        ConfigBundle b = preset("fig3");
        double beer = 0.0, beer_full = 0.0;
        for (double alpha : {0.5, 1.0, 2.0, 5.0, 75.0}) {
            b.medium.alpha_p = alpha;
            b.finalize();
            DriveConfig d = apply_mode(*b.drive, SpectrumMode::two_level);
            d.delta_p = 0.0;
            const double t = Medium(b.rates, b.medium, d).observables().T_p;
            beer = std::max(beer, std::abs(t - std::exp(-alpha / 2)));
            beer_full = std::max(beer_full, std::abs(t - std::exp(-alpha)));
        }
        add(beer <= 1e-6, fmt("two-level |A|^2 vs exp(-alpha_p/2): max |diff| %.3e at alpha_p in {0.5..75} "
                              "(%s convention; vs exp(-alpha_p): %.1e)",
                              beer, std::string(to_string(b.medium.od_convention)).c_str(), beer_full));
        add(plateau <= 0.01, fmt("pulse plateau vs CW %.2e relative", plateau));
        return v;
    });

    criterion(10, "optimized eta_s rises from OD 75 to OD 110", 0.0, [&] {
        eta75 = optimize_eta(75.0, od, od.optimize, threads).eta_s;
        eta110 = optimize_eta(110.0, od, od.optimize, threads).eta_s;
        return Verdict{eta110 > eta75, fmt("eta_s(75) = %.6f, eta_s(110) = %.6f", eta75, eta110)};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
