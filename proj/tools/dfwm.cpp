// dfwm: command-line front end.
//
//   dfwm spectrum --preset fig3 --mode fwm --from -10 --to 15 --step 0.1
//   dfwm pulse    --preset fig3 --delta-p -1
//   dfwm optimize --od 200 --seed 7
//   dfwm validate --preset fig4
//   dfwm presets

#include "dfwm/errors.hpp"
#include "dfwm/io.hpp"
#include "dfwm/optimize.hpp"
#include "dfwm/parallel.hpp"
#include "dfwm/pulse.hpp"
#include "dfwm/spectrum.hpp"
#include "dfwm/validate.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string preset;
    std::string config;
    std::string out = ".";
    int threads = 0;
    bool si = false;
    std::optional<double> od;
    std::optional<double> delta_p;
};

struct Loaded {
    dfwm::ConfigBundle bundle;
    std::optional<std::string> preset;
};

Loaded load(const Common& c, const std::string& fallback_preset) {
    Loaded l;
    if (!c.config.empty()) {
        l.bundle = dfwm::load_config_file(c.config);
    } else {
        const std::string name = c.preset.empty() ? fallback_preset : c.preset;
        if (name.empty()) throw dfwm::ValidationError("preset", "give --preset NAME or --config PATH");
        l.bundle = dfwm::preset(name);
        l.preset = name;
    }
    if (c.od) l.bundle.medium.alpha_p = *c.od;
    if (c.delta_p) {
        if (!l.bundle.drive) throw dfwm::ValidationError("fields", "--delta-p needs a configured drive");
        l.bundle.drive->delta_p = *c.delta_p;
    }
    l.bundle.finalize();
    return l;
}

int threads_of(const Common& c) { return c.threads > 0 ? c.threads : dfwm::default_threads(); }

dfwm::RunManifest manifest_for(const std::string& command, const Loaded& l) {
    dfwm::RunManifest m;
    m.command = command;
    m.config_hash = dfwm::config_hash(l.bundle);
    m.preset = l.preset;
    return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void add_common(CLI::App* app, Common& c, bool with_od = true) {
    auto* p = app->add_option("--preset", c.preset, "fig3, fig4 or od200");
    auto* f = app->add_option("--config", c.config, "JSON config file");
    p->excludes(f);
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_option("--threads", c.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app->add_flag("--si", c.si, "add SI-unit columns (Gamma = 2pi x 6 MHz)");
    if (with_od) app->add_option("--od", c.od, "override alpha_p");
}

int run_spectrum(const Common& c, const std::optional<std::string>& mode, const std::optional<double>& from,
                 const std::optional<double>& to, const std::optional<double>& step,
                 const std::optional<double>& linewidth) {
    const auto t0 = std::chrono::steady_clock::now();
    Loaded l = load(c, "");
    auto& s = l.bundle.sweep;
    if (mode) s.mode = dfwm::parse_mode(*mode);
    if (from) s.from = *from;
    if (to) s.to = *to;
    if (step) s.step = *step;
    if (linewidth) s.linewidth = *linewidth;
    l.bundle.finalize();

    const dfwm::SpectrumTable table = dfwm::spectrum_sweep(l.bundle, threads_of(c));
    dfwm::RunManifest m = manifest_for("spectrum", l);
    m.wall_seconds = seconds_since(t0);
    const fs::path path = fs::path(c.out) / ("spectrum_" + std::string(dfwm::to_string(s.mode)) + ".csv");
    dfwm::write_csv(path, dfwm::spectrum_table(table, c.si), m, l.bundle);

    const auto dp = table.delta_p();
    const auto eta = table.eta_s();
    const auto tp = table.T_p();
    const std::size_t ie = dfwm::argmax(eta);
    const std::size_t it = dfwm::argmax(tp);
    std::printf("mode %s, %zu points -> %s\n", std::string(dfwm::to_string(s.mode)).c_str(), dp.size(),
                path.string().c_str());
    std::printf("max eta_s %.6f at delta_p %.4g\n", eta[ie], dp[ie]);
    std::printf("max T_p %.6f at delta_p %.4g\n", tp[it], dp[it]);
    if (const auto peak = dfwm::transparency_peak(tp))
        std::printf("transparency peak T_p %.6f at delta_p %.4g\n", tp[*peak], dp[*peak]);
    else
        std::printf("transparency peak: none inside the sweep\n");
    return 0;
}

int run_pulse(const Common& c, const std::optional<double>& duration) {
    const auto t0 = std::chrono::steady_clock::now();
    Loaded l = load(c, "");
    if (duration) l.bundle.pulse.duration = *duration;
    l.bundle.finalize();

    const dfwm::PulseResult p = dfwm::propagate_pulse(dfwm::PulseShape::square, l.bundle.pulse, l.bundle, threads_of(c));
    dfwm::RunManifest m = manifest_for("pulse", l);
    m.wall_seconds = seconds_since(t0);
    const fs::path path = fs::path(c.out) / "pulse.csv";
    dfwm::write_csv(path, dfwm::pulse_table(p, c.si), m, l.bundle);

    std::printf("duration %.4g /Gamma (%.4g ns), %zu samples -> %s\n", p.duration, p.duration * dfwm::units::time_unit_ns,
                p.time.size(), path.string().c_str());
    std::printf("signal plateau %.6f (cw eta_s %.6f)\n", p.plateau_signal, p.cw.eta_s);
    std::printf("probe plateau %.6f (cw T_p %.6f)\n", p.plateau_probe, p.cw.T_p);
    std::printf("plateau %s\n", p.converged ? "converged" : "not converged (pulse too short for steady state)");
    return 0;
}

int run_optimize(Common c, const std::optional<std::uint64_t>& seed, const std::optional<int>& starts,
                 const std::optional<int>& max_evals) {
    const auto t0 = std::chrono::steady_clock::now();
    Loaded l = load(c, "od200");
    auto& o = l.bundle.optimize;
    if (seed) o.seed = *seed;
    if (starts) o.starts = *starts;
    if (max_evals) o.max_evals = *max_evals;
    l.bundle.finalize();

    const dfwm::OptimizationResult r = dfwm::optimize_eta(l.bundle, threads_of(c));
    dfwm::RunManifest m = manifest_for("optimize", l);
    m.seed = o.seed;
    m.wall_seconds = seconds_since(t0);
    const fs::path path = fs::path(c.out) / "optimize.json";
    dfwm::write_text(path, dfwm::optimization_json(r, m, l.bundle, c.si));

    std::printf("alpha_p %.6g: eta_s %.6f at omega_c %.4f omega_d %.4f delta_c %.4f delta_d %.4f delta_p %.4f "
                "(start %d of %d, %d evaluations, seed %llu) -> %s\n",
                l.bundle.medium.alpha_p, r.eta_s, r.best[0], r.best[1], r.best[2], r.best[3], r.best[4],
                r.best_start, o.starts, r.evaluations, static_cast<unsigned long long>(o.seed),
                path.string().c_str());
    return 0;
}

int run_validate(const Common& c, bool no_pulse) {
    const auto t0 = std::chrono::steady_clock::now();
    const Loaded l = load(c, "fig3");
    dfwm::ValidationOptions opts;
    opts.pulse = !no_pulse;
    const dfwm::ValidationReport report = dfwm::run_validation(l.bundle, opts, threads_of(c));
    dfwm::RunManifest m = manifest_for("validate", l);
    m.wall_seconds = seconds_since(t0);
    const fs::path path = fs::path(c.out) / "validate.json";
    dfwm::write_text(path, dfwm::validation_json(report, m));

    for (const auto& ch : report.checks)
        std::printf("%-4s %-18s %.3e <= %.0e  %s\n", ch.skipped ? "SKIP" : (ch.passed ? "PASS" : "FAIL"),
                    ch.name.c_str(), ch.metric, ch.threshold, ch.detail.c_str());
    std::printf("%s -> %s\n", report.passed() ? "all checks passed" : "invariant failure", path.string().c_str());
    return report.passed() ? 0 : dfwm::InvariantError("").exit_code();
}

int run_presets(const std::string& dump) {
    if (!dump.empty()) {
        std::cout << dfwm::dump_config(dfwm::preset(dump)) << '\n';
        return 0;
    }
    for (const auto& name : dfwm::preset_names()) {
        const auto b = dfwm::preset(name);
        std::printf("%-6s alpha_p %g", name.c_str(), b.medium.alpha_p);
        if (b.drive)
            std::printf("  omega_c %g omega_d %g delta_c %g delta_d %g delta_p %g\n", b.drive->omega_c,
                        b.drive->omega_d, b.drive->delta_c, b.drive->delta_d, b.drive->delta_p);
        else
            std::printf("  drive free (optimize)\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diamond-scheme four-wave-mixing frequency conversion"};
    app.set_version_flag("--version", std::string(dfwm::version()));
    app.require_subcommand(1);

    Common common;

    auto* spectrum = app.add_subcommand("spectrum", "sweep the probe detuning");
    add_common(spectrum, common);
    std::optional<std::string> mode;
    std::optional<double> from, to, step, linewidth;
    spectrum->add_option("--mode", mode, "fwm, v_type, cascade or two_level");
    spectrum->add_option("--from", from);
    spectrum->add_option("--to", to);
    spectrum->add_option("--step", step);
    spectrum->add_option("--linewidth", linewidth, "Lorentzian FWHM for smoothed columns");

    auto* pulse = app.add_subcommand("pulse", "square probe pulse through the medium");
    add_common(pulse, common);
    std::optional<double> duration;
    pulse->add_option("--delta-p", common.delta_p, "probe detuning");
    pulse->add_option("--duration", duration, "pulse length in 1/Gamma (default 200 ns)");

    auto* optimize = app.add_subcommand("optimize", "maximize eta_s over the drive at fixed OD");
    add_common(optimize, common);
    std::optional<std::uint64_t> seed;
    std::optional<int> starts, max_evals;
    optimize->add_option("--seed", seed);
    optimize->add_option("--starts", starts);
    optimize->add_option("--max-evals", max_evals, "evaluation budget per start");

    auto* validate = app.add_subcommand("validate", "run the invariant suite");
    add_common(validate, common);
    bool no_pulse = false;
    validate->add_option("--delta-p", common.delta_p, "probe detuning");
    validate->add_flag("--no-pulse", no_pulse, "skip the pulse plateau check");

    auto* presets = app.add_subcommand("presets", "list built-in parameter sets");
    std::string dump;
    presets->add_option("--dump", dump, "print one preset as a config document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*spectrum) return run_spectrum(common, mode, from, to, step, linewidth);
        if (*pulse) return run_pulse(common, duration);
        if (*optimize) return run_optimize(common, seed, starts, max_evals);
        if (*validate) return run_validate(common, no_pulse);
        if (*presets) return run_presets(dump);
    } catch (const dfwm::Error& e) {
        std::fprintf(stderr, "dfwm: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "dfwm: %s\n", e.what());
        return 1;
    }
    return 0;
}
