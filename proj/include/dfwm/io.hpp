#pragma once

// Result files. Tabular output is CSV with a '#' comment header carrying the
// run manifest and the full config; optimizer results are a JSON document.

#include "dfwm/config.hpp"
#include "dfwm/optimize.hpp"
#include "dfwm/pulse.hpp"
#include "dfwm/spectrum.hpp"
#include "dfwm/validate.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfwm {

std::string_view version();

std::uint64_t fnv1a64(std::string_view data);

/// 16 hex digits of FNV-1a over the compact canonical config dump. Equal
/// configs hash equally no matter how the document was laid out.
std::string config_hash(const ConfigBundle& bundle);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::optional<std::string> preset;
    std::optional<std::uint64_t> seed;
    std::string version{dfwm::version()};
    double wall_seconds = 0.0;

    /// Compact single-line JSON.
    std::string to_json() const;
    static RunManifest from_json(std::string_view text);
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table spectrum_table(const SpectrumTable& spectrum, bool si);
Table pulse_table(const PulseResult& pulse, bool si);

/// '#'-prefixed header lines: manifest, then config. Numbers use 17
/// significant digits so the file round-trips exactly.
void write_csv(const std::filesystem::path& path, const Table& table, const RunManifest& manifest,
               const ConfigBundle& bundle);

struct CsvFile {
    std::vector<std::string> comments;
    Table table;
    std::optional<RunManifest> manifest;
    std::optional<ConfigBundle> config;

    std::vector<double> column(std::string_view name) const;
};

CsvFile read_csv(const std::filesystem::path& path);

std::string optimization_json(const OptimizationResult& result, const RunManifest& manifest,
                              const ConfigBundle& bundle, bool si);
std::string validation_json(const ValidationReport& report, const RunManifest& manifest);

void write_text(const std::filesystem::path& path, std::string_view text);

/// %.17g.
std::string format_number(double value);

}  // namespace dfwm
