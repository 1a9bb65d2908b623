#include "dfwm/io.hpp"

#include "dfwm/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#ifndef DFWM_VERSION
#define DFWM_VERSION "0.0.0"
#endif

namespace dfwm {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kManifestTag = "# manifest: ";
constexpr const char* kConfigTag = "# config: ";

// Gamma / 2pi in MHz converts Gamma-unit frequencies to MHz (cyclic).
double to_mhz(double gamma_units) { return gamma_units * units::gamma_mhz; }

json drive_json(const DriveVector& x, bool si) {
    json j = {{"omega_c", x[0]}, {"omega_d", x[1]}, {"delta_c", x[2]}, {"delta_d", x[3]}, {"delta_p", x[4]}};
    if (si) {
        json m = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) m[it.key() + "_mhz"] = to_mhz(it.value().get<double>());
        j["si"] = m;
    }
    return j;
}

}  // namespace

std::string_view version() { return DFWM_VERSION; }

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const ConfigBundle& bundle) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(dump_config(bundle, -1))));
    return buf;
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string RunManifest::to_json() const {
    json j;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["preset"] = preset ? json(*preset) : json(nullptr);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["version"] = version;
    j["wall_seconds"] = wall_seconds;
    return j.dump();
}

RunManifest RunManifest::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.config_hash = j.at("config_hash").get<std::string>();
        if (!j.at("preset").is_null()) m.preset = j["preset"].get<std::string>();
        if (!j.at("seed").is_null()) m.seed = j["seed"].get<std::uint64_t>();
        m.version = j.at("version").get<std::string>();
        m.wall_seconds = j.at("wall_seconds").get<double>();
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
}

Table spectrum_table(const SpectrumTable& s, bool si) {
    Table t;
    t.columns = {"delta_p_over_gamma", "T_p", "eta_s", "T_s", "eta_p"};
    if (s.linewidth) {
        t.columns.emplace_back("T_p_smoothed");
        t.columns.emplace_back("eta_s_smoothed");
    }
    if (si) t.columns.emplace_back("delta_p_mhz");
    t.rows.reserve(s.rows.size());
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const SpectrumRow& r = s.rows[i];
        std::vector<double> row{r.delta_p, r.obs.T_p, r.obs.eta_s, r.obs.T_s, r.obs.eta_p};
        if (s.linewidth) {
            row.push_back(s.T_p_smoothed[i]);
            row.push_back(s.eta_s_smoothed[i]);
        }
        if (si) row.push_back(to_mhz(r.delta_p));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table pulse_table(const PulseResult& p, bool si) {
    Table t;
    t.columns = {"time_over_gamma_inv", "input_probe", "output_probe", "output_signal"};
    if (si) t.columns.emplace_back("time_ns");
    t.rows.reserve(p.time.size());
    for (std::size_t i = 0; i < p.time.size(); ++i) {
        std::vector<double> row{p.time[i], p.input_probe[i], p.output_probe[i], p.output_signal[i]};
        if (si) row.push_back(p.time[i] * units::time_unit_ns);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("out", "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw ValidationError("out", "write to " + path.string() + " failed");
}

void write_csv(const std::filesystem::path& path, const Table& table, const RunManifest& manifest,
               const ConfigBundle& bundle) {
    std::ostringstream s;
    s << "# dfwm " << manifest.version << '\n';
    s << kManifestTag << manifest.to_json() << '\n';
    s << kConfigTag << dump_config(bundle, -1) << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) s << (c ? "," : "") << table.columns[c];
    s << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) s << (c ? "," : "") << format_number(row[c]);
        s << '\n';
    }
    write_text(path, s.str());
}

std::vector<double> CsvFile::column(std::string_view name) const {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (table.columns[c] != name) continue;
        std::vector<double> out;
        out.reserve(table.rows.size());
        for (const auto& r : table.rows) out.push_back(r.at(c));
        return out;
    }
    throw ValidationError(std::string(name), "no such column");
}

CsvFile read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    CsvFile f;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            f.comments.push_back(line);
            if (line.rfind(kManifestTag, 0) == 0)
                f.manifest = RunManifest::from_json(std::string_view(line).substr(std::string_view(kManifestTag).size()));
            else if (line.rfind(kConfigTag, 0) == 0)
                f.config = load_config(std::string_view(line).substr(std::string_view(kConfigTag).size()));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (!header) {
            f.table.columns = std::move(cells);
            header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw ParseError(path.string() + ": bad number '" + c + "'");
            }
        }
        if (row.size() != f.table.columns.size()) throw ParseError(path.string() + ": ragged row");
        f.table.rows.push_back(std::move(row));
    }
    return f;
}

std::string optimization_json(const OptimizationResult& r, const RunManifest& manifest, const ConfigBundle& bundle,
                              bool si) {
    json j;
    j["manifest"] = json::parse(manifest.to_json());
    j["config"] = json::parse(dump_config(bundle, -1));
    j["alpha_p"] = bundle.medium.alpha_p;
    j["seed"] = r.seed;
    j["eta_s"] = r.eta_s;
    j["best"] = drive_json(r.best, si);
    j["best_start"] = r.best_start;
    j["evaluations"] = r.evaluations;
    json starts = json::array();
    for (const StartResult& s : r.starts) {
        json trace = json::array();
        for (const auto& [it, v] : s.trace) trace.push_back({it, v});
        starts.push_back({{"start", drive_json(s.start, false)},
                          {"best", drive_json(s.best, false)},
                          {"eta_s", s.eta_s},
                          {"evaluations", s.evaluations},
                          {"converged", s.converged},
                          {"trace", trace}});
    }
    j["starts"] = starts;
    return j.dump(2) + "\n";
}

std::string validation_json(const ValidationReport& report, const RunManifest& manifest) {
    json j;
    j["manifest"] = json::parse(manifest.to_json());
    j["passed"] = report.passed();
    json checks = json::array();
    for (const CheckResult& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"status", c.skipped ? "skipped" : (c.passed ? "pass" : "fail")},
                          {"metric", c.metric},
                          {"threshold", c.threshold},
                          {"points", c.points},
                          {"detail", c.detail}});
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

}  // namespace dfwm
