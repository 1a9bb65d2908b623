#include "dfwm/config.hpp"

#include "dfwm/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dfwm {

using nlohmann::json;

namespace {

constexpr double kBranching42 = 0.2 / 0.583;

void require_finite(double value, const std::string& key) {
    if (!std::isfinite(value)) throw ValidationError(key, "must be finite");
}

void require_nonnegative(double value, const std::string& key) {
    require_finite(value, key);
    if (value < 0.0) throw ValidationError(key, "must be >= 0, got " + std::to_string(value));
}

void require_positive(double value, const std::string& key) {
    require_finite(value, key);
    if (value <= 0.0) throw ValidationError(key, "must be > 0, got " + std::to_string(value));
}

constexpr std::array<const char*, 5> kParamNames{"omega_c", "omega_d", "delta_c", "delta_d",
                                                 "delta_p"};

/// Reads one flat section, dispatching each key to a setter. Unknown keys and
/// non-scalar values are rejected.
class SectionReader {
public:
    SectionReader(const json& doc, const std::string& name) : name_(name) {
        auto it = doc.find(name);
        if (it == doc.end()) return;
        if (!it->is_object()) throw ValidationError(name, "section must be an object");
        section_ = &*it;
    }

    bool present() const { return section_ != nullptr; }

    void number(const std::string& key, double& out) {
        handled_.push_back(key);
        if (!section_) return;
        auto it = section_->find(key);
        if (it == section_->end()) return;
        if (!it->is_number()) throw ValidationError(qualified(key), "must be a number");
        out = it->get<double>();
        seen_[key] = true;
    }

    void optional_number(const std::string& key, std::optional<double>& out) {
        handled_.push_back(key);
        if (!section_) return;
        auto it = section_->find(key);
        if (it == section_->end() || it->is_null()) return;
        if (!it->is_number()) throw ValidationError(qualified(key), "must be a number");
        out = it->get<double>();
        seen_[key] = true;
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        handled_.push_back(key);
        if (!section_) return;
        auto it = section_->find(key);
        if (it == section_->end()) return;
        if (!it->is_number_integer()) throw ValidationError(qualified(key), "must be an integer");
        if constexpr (std::is_unsigned_v<Int>) {
            if (it->is_number_unsigned()) {
                out = it->get<Int>();
            } else {
                throw ValidationError(qualified(key), "must be a non-negative integer");
            }
        } else {
            out = it->get<Int>();
        }
        seen_[key] = true;
    }

    void string(const std::string& key, std::string& out) {
        handled_.push_back(key);
        if (!section_) return;
        auto it = section_->find(key);
        if (it == section_->end()) return;
        if (!it->is_string()) throw ValidationError(qualified(key), "must be a string");
        out = it->get<std::string>();
        seen_[key] = true;
    }

    bool seen(const std::string& key) const { return seen_.contains(key); }

    void reject_unknown() const {
        if (!section_) return;
        for (const auto& [key, value] : section_->items()) {
            if (std::find(handled_.begin(), handled_.end(), key) == handled_.end())
                throw ValidationError(qualified(key), "unknown key");
        }
    }

    std::string qualified(const std::string& key) const { return name_ + "." + key; }

private:
    std::string name_;
    const json* section_ = nullptr;
    std::vector<std::string> handled_;
    std::map<std::string, bool> seen_;
};

RateTable read_rates(const json& doc) {
    SectionReader in(doc, "rates");
    RateTable r;
    in.number("Gamma2_total", r.Gamma2_total);
    in.number("Gamma3_total", r.Gamma3_total);
    in.number("Gamma4_total", r.Gamma4_total);
    in.number("gamma_extra", r.gamma_extra);

    std::optional<double> G21, G31, G42, G43, g21, g23, g31, g41, g43;
    in.optional_number("Gamma21", G21);
    in.optional_number("Gamma31", G31);
    in.optional_number("Gamma42", G42);
    in.optional_number("Gamma43", G43);
    in.optional_number("gamma21", g21);
    in.optional_number("gamma23", g23);
    in.optional_number("gamma31", g31);
    in.optional_number("gamma41", g41);
    in.optional_number("gamma43", g43);
    in.reject_unknown();

    RateTable d = RateTable::from_totals(
        r.Gamma2_total, r.Gamma3_total, r.Gamma4_total, G21.value_or(r.Gamma2_total),
        G31.value_or(r.Gamma3_total),
        G42.value_or(in.seen("Gamma4_total") ? kBranching42 * r.Gamma4_total : RateTable{}.Gamma42),
        G43.value_or(in.seen("Gamma4_total") ? (1.0 - kBranching42) * r.Gamma4_total
                                             : RateTable{}.Gamma43),
        r.gamma_extra);
    // Explicit coherence rates are totals; gamma_extra only enters the
    // derived ones.
    if (g21) d.gamma21 = *g21;
    if (g23) d.gamma23 = *g23;
    if (g31) d.gamma31 = *g31;
    if (g41) d.gamma41 = *g41;
    if (g43) d.gamma43 = *g43;
    return d;
}

MediumConfig read_medium(const json& doc) {
    SectionReader in(doc, "medium");
    MediumConfig m;
    in.number("alpha_p", m.alpha_p);
    in.number("lambda_p", m.lambda_p);
    in.number("lambda_c", m.lambda_c);
    in.number("lambda_d", m.lambda_d);
    in.number("lambda_s", m.lambda_s);
    in.integer("n_z", m.n_z);
    std::string convention = std::string(to_string(m.od_convention));
    in.string("od_convention", convention);
    in.reject_unknown();
    if (convention == "intensity") {
        m.od_convention = OdConvention::intensity;
    } else if (convention == "field") {
        m.od_convention = OdConvention::field;
    } else {
        throw ValidationError("medium.od_convention",
                              "expected 'intensity' or 'field', got '" + convention + "'");
    }
    return m;
}

std::optional<DriveConfig> read_fields(const json& doc) {
    SectionReader in(doc, "fields");
    if (!in.present()) {
        in.reject_unknown();
        return std::nullopt;
    }
    DriveConfig d;
    in.number("omega_c", d.omega_c);
    in.number("omega_d", d.omega_d);
    in.number("delta_p", d.delta_p);
    in.number("delta_c", d.delta_c);
    in.number("delta_d", d.delta_d);
    in.reject_unknown();
    return d;
}

SweepOptions read_sweep(const json& doc) {
    SectionReader in(doc, "sweep");
    SweepOptions s;
    std::string mode = std::string(to_string(s.mode));
    in.string("mode", mode);
    in.number("from", s.from);
    in.number("to", s.to);
    in.number("step", s.step);
    in.optional_number("linewidth", s.linewidth);
    in.reject_unknown();
    try {
        s.mode = parse_mode(mode);
    } catch (const ValidationError&) {
        throw ValidationError("sweep.mode", "unknown mode '" + mode + "'");
    }
    return s;
}

PulseOptions read_pulse(const json& doc) {
    SectionReader in(doc, "pulse");
    PulseOptions p;
    in.number("duration", p.duration);
    in.number("window_factor", p.window_factor);
    in.integer("samples", p.samples);
    in.number("amplitude", p.amplitude);
    in.reject_unknown();
    return p;
}

OptimizeOptions read_optimize(const json& doc) {
    SectionReader in(doc, "optimize");
    OptimizeOptions o;
    in.integer("starts", o.starts);
    in.integer("seed", o.seed);
    in.integer("max_evals", o.max_evals);
    in.number("tolerance", o.tolerance);
    for (std::size_t i = 0; i < kParamNames.size(); ++i) {
        in.number(std::string(kParamNames[i]) + "_min", o.bounds.lower[i]);
        in.number(std::string(kParamNames[i]) + "_max", o.bounds.upper[i]);
    }
    in.reject_unknown();
    return o;
}

json to_json(const ConfigBundle& b) {
    json doc;
    const RateTable& r = b.rates;
    doc["rates"] = {
        {"Gamma2_total", r.Gamma2_total}, {"Gamma3_total", r.Gamma3_total},
        {"Gamma4_total", r.Gamma4_total}, {"Gamma21", r.Gamma21},
        {"Gamma31", r.Gamma31},           {"Gamma42", r.Gamma42},
        {"Gamma43", r.Gamma43},           {"gamma21", r.gamma21},
        {"gamma23", r.gamma23},           {"gamma31", r.gamma31},
        {"gamma41", r.gamma41},           {"gamma43", r.gamma43},
        {"gamma_extra", r.gamma_extra},
    };
    const MediumConfig& m = b.medium;
    doc["medium"] = {
        {"alpha_p", m.alpha_p},   {"lambda_p", m.lambda_p}, {"lambda_c", m.lambda_c},
        {"lambda_d", m.lambda_d}, {"lambda_s", m.lambda_s}, {"n_z", m.n_z},
        {"od_convention", std::string(to_string(m.od_convention))},
    };
    if (b.drive) {
        const DriveConfig& d = *b.drive;
        doc["fields"] = {
            {"omega_c", d.omega_c}, {"omega_d", d.omega_d}, {"delta_p", d.delta_p},
            {"delta_c", d.delta_c}, {"delta_d", d.delta_d},
        };
    }
    doc["sweep"] = {
        {"mode", std::string(to_string(b.sweep.mode))},
        {"from", b.sweep.from},
        {"to", b.sweep.to},
        {"step", b.sweep.step},
    };
    if (b.sweep.linewidth) doc["sweep"]["linewidth"] = *b.sweep.linewidth;
    doc["pulse"] = {
        {"duration", b.pulse.duration},
        {"window_factor", b.pulse.window_factor},
        {"samples", b.pulse.samples},
        {"amplitude", b.pulse.amplitude},
    };
    json opt = {
        {"starts", b.optimize.starts},
        {"seed", b.optimize.seed},
        {"max_evals", b.optimize.max_evals},
        {"tolerance", b.optimize.tolerance},
    };
    for (std::size_t i = 0; i < kParamNames.size(); ++i) {
        opt[std::string(kParamNames[i]) + "_min"] = b.optimize.bounds.lower[i];
        opt[std::string(kParamNames[i]) + "_max"] = b.optimize.bounds.upper[i];
    }
    doc["optimize"] = opt;
    return doc;
}

}  // namespace

RateTable RateTable::from_totals(double Gamma2_total, double Gamma3_total, double Gamma4_total,
                                 double Gamma21, double Gamma31, double Gamma42, double Gamma43,
                                 double gamma_extra) {
    RateTable r;
    r.Gamma2_total = Gamma2_total;
    r.Gamma3_total = Gamma3_total;
    r.Gamma4_total = Gamma4_total;
    r.Gamma21 = Gamma21;
    r.Gamma31 = Gamma31;
    r.Gamma42 = Gamma42;
    r.Gamma43 = Gamma43;
    r.gamma_extra = gamma_extra;
    r.gamma21 = 0.5 * Gamma2_total + gamma_extra;
    r.gamma23 = 0.5 * (Gamma2_total + Gamma3_total) + gamma_extra;
    r.gamma31 = 0.5 * Gamma3_total + gamma_extra;
    r.gamma41 = 0.5 * Gamma4_total + gamma_extra;
    r.gamma43 = 0.5 * (Gamma4_total + Gamma3_total) + gamma_extra;
    return r;
}

RateTable RateTable::uniform() { return from_totals(1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5); }

void RateTable::validate() const {
    const std::pair<const char*, double> all[] = {
        {"rates.Gamma2_total", Gamma2_total}, {"rates.Gamma3_total", Gamma3_total},
        {"rates.Gamma4_total", Gamma4_total}, {"rates.Gamma21", Gamma21},
        {"rates.Gamma31", Gamma31},           {"rates.Gamma42", Gamma42},
        {"rates.Gamma43", Gamma43},           {"rates.gamma21", gamma21},
        {"rates.gamma23", gamma23},           {"rates.gamma31", gamma31},
        {"rates.gamma41", gamma41},           {"rates.gamma43", gamma43},
        {"rates.gamma_extra", gamma_extra},
    };
    for (const auto& [key, value] : all) require_nonnegative(value, key);

    // Partial rates may not exceed the totals; a small slack absorbs
    // rounding in user-provided decimal values.
    constexpr double slack = 1e-12;
    if (Gamma21 > Gamma2_total + slack)
        throw ValidationError("rates.Gamma21, rates.Gamma2_total", "Gamma21 exceeds Gamma2_total");
    if (Gamma31 > Gamma3_total + slack)
        throw ValidationError("rates.Gamma31, rates.Gamma3_total", "Gamma31 exceeds Gamma3_total");
    if (Gamma42 + Gamma43 > Gamma4_total + slack)
        throw ValidationError("rates.Gamma42, rates.Gamma43, rates.Gamma4_total",
                              "Gamma42 + Gamma43 exceeds Gamma4_total");
    // Denominators of the derived optical depths.
    require_positive(Gamma21, "rates.Gamma21");
    require_positive(gamma31, "rates.gamma31");
    require_positive(gamma43, "rates.gamma43");
}

bool RateTable::closed(double tol) const {
    return std::abs(Gamma21 - Gamma2_total) <= tol && std::abs(Gamma31 - Gamma3_total) <= tol &&
           std::abs(Gamma42 + Gamma43 - Gamma4_total) <= tol;
}

void MediumConfig::derive_depths(const RateTable& r) {
    const double base = alpha_p * r.gamma21 / r.Gamma21;
    alpha_c = base * (lambda_c / lambda_p) * (lambda_c / lambda_p) * (r.Gamma31 / r.gamma31);
    alpha_s = base * (lambda_s / lambda_p) * (lambda_s / lambda_p) * (r.Gamma43 / r.gamma43);
}

std::string_view to_string(SpectrumMode mode) {
    switch (mode) {
        case SpectrumMode::fwm: return "fwm";
        case SpectrumMode::v_type: return "v_type";
        case SpectrumMode::cascade: return "cascade";
        case SpectrumMode::two_level: return "two_level";
    }
    return "fwm";
}

SpectrumMode parse_mode(std::string_view text) {
    if (text == "fwm") return SpectrumMode::fwm;
    if (text == "v_type") return SpectrumMode::v_type;
    if (text == "cascade") return SpectrumMode::cascade;
    if (text == "two_level") return SpectrumMode::two_level;
    throw ValidationError("mode", "unknown mode '" + std::string(text) +
                                      "' (expected fwm, v_type, cascade, two_level)");
}

std::string_view to_string(OdConvention convention) {
    return convention == OdConvention::intensity ? "intensity" : "field";
}

const DriveConfig& ConfigBundle::require_drive() const {
    if (!drive) throw ValidationError("fields", "no drive fields configured");
    return *drive;
}

void ConfigBundle::finalize() {
    rates.validate();

    require_nonnegative(medium.alpha_p, "medium.alpha_p");
    if (medium.n_z < 2) throw ValidationError("medium.n_z", "must be >= 2");
    require_positive(medium.lambda_p, "medium.lambda_p");
    require_positive(medium.lambda_c, "medium.lambda_c");
    require_positive(medium.lambda_d, "medium.lambda_d");
    require_positive(medium.lambda_s, "medium.lambda_s");
    const double in = 1.0 / medium.lambda_p + 1.0 / medium.lambda_d;
    const double out = 1.0 / medium.lambda_c + 1.0 / medium.lambda_s;
    if (std::abs(in - out) > 0.005 * in)
        throw ValidationError("medium.lambda_p, medium.lambda_c, medium.lambda_d, medium.lambda_s",
                              "wavelengths violate four-wave-mixing energy conservation by more "
                              "than 0.5%");
    medium.derive_depths(rates);

    if (drive) {
        require_nonnegative(drive->omega_c, "fields.omega_c");
        require_nonnegative(drive->omega_d, "fields.omega_d");
        require_finite(drive->delta_p, "fields.delta_p");
        require_finite(drive->delta_c, "fields.delta_c");
        require_finite(drive->delta_d, "fields.delta_d");
    }

    require_finite(sweep.from, "sweep.from");
    require_finite(sweep.to, "sweep.to");
    require_positive(sweep.step, "sweep.step");
    if (sweep.to < sweep.from) throw ValidationError("sweep.from, sweep.to", "empty range");
    if (sweep.linewidth) require_positive(*sweep.linewidth, "sweep.linewidth");

    require_positive(pulse.duration, "pulse.duration");
    require_positive(pulse.window_factor, "pulse.window_factor");
    require_nonnegative(pulse.amplitude, "pulse.amplitude");
    if (pulse.samples < 16) throw ValidationError("pulse.samples", "must be >= 16");

    if (optimize.starts < 1) throw ValidationError("optimize.starts", "must be >= 1");
    if (optimize.max_evals < 1) throw ValidationError("optimize.max_evals", "must be >= 1");
    require_positive(optimize.tolerance, "optimize.tolerance");
    for (std::size_t i = 0; i < kParamNames.size(); ++i) {
        const std::string lo = "optimize." + std::string(kParamNames[i]) + "_min";
        const std::string hi = "optimize." + std::string(kParamNames[i]) + "_max";
        require_finite(optimize.bounds.lower[i], lo);
        require_finite(optimize.bounds.upper[i], hi);
        if (optimize.bounds.lower[i] > optimize.bounds.upper[i])
            throw ValidationError(lo + ", " + hi, "lower bound exceeds upper bound");
    }
    if (optimize.bounds.lower[0] < 0.0) throw ValidationError("optimize.omega_c_min", "must be >= 0");
    if (optimize.bounds.lower[1] < 0.0) throw ValidationError("optimize.omega_d_min", "must be >= 0");
}

ConfigBundle load_config(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("top level must be an object");

    static const std::array<std::string, 6> sections{"rates", "medium", "fields",
                                                     "sweep", "pulse",  "optimize"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(sections.begin(), sections.end(), key) == sections.end())
            throw ValidationError(key, "unknown section");
    }

    ConfigBundle b;
    b.rates = read_rates(doc);
    b.medium = read_medium(doc);
    b.drive = read_fields(doc);
    b.sweep = read_sweep(doc);
    b.pulse = read_pulse(doc);
    b.optimize = read_optimize(doc);
    b.finalize();
    return b;
}

ConfigBundle load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string dump_config(const ConfigBundle& bundle, int indent) {
    return to_json(bundle).dump(indent);
}

ConfigBundle preset(std::string_view name) {
    ConfigBundle b;
    if (name == "fig3") {
        // Bright MOT.
        b.medium.alpha_p = 75.0;
        b.drive = DriveConfig{.omega_c = 11.0, .omega_d = 9.0, .delta_p = -1.0, .delta_c = 5.0,
                              .delta_d = -4.0};
    } else if (name == "fig4") {
        // Dark SPOT.
        b.medium.alpha_p = 110.0;
        b.drive = DriveConfig{.omega_c = 20.0, .omega_d = 12.0, .delta_p = -4.0, .delta_c = 8.0,
                              .delta_d = -5.0};
    } else if (name == "od200") {
        b.medium.alpha_p = 200.0;
    } else {
        throw ValidationError("preset", "unknown preset '" + std::string(name) +
                                            "' (expected fig3, fig4, od200)");
    }
    b.finalize();
    return b;
}

std::vector<std::string> preset_names() { return {"fig3", "fig4", "od200"}; }

}  // namespace dfwm
