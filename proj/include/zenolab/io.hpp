// io.hpp — run configs (JSON), plot-ready CSV output, and run manifests

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "zenolab/filter.hpp"
#include "zenolab/spectrum.hpp"

namespace zenolab::io {

using json = nlohmann::json;

// Spectrum config object; throws ConfigError naming the offending field.
//   {"kind":"lorentzian","C":..,"omega_m":..,"gamma_r":..}
//   {"kind":"power_law","A":..,"eta":..,"omega_c":..}
//   {"kind":"tail_cutoff","A":..,"beta":..,"omega_c":..,"side":±1,"gamma_r":..}
//   {"kind":"hydrogenic","alpha":..,"omega_b":..}
//   {"kind":"flat","G0":..,"omega_lo":..,"omega_hi":..}
//   {"kind":"tabulated","omega":[..],"G":[..]}
ReservoirSpectrum parse_spectrum(const json& j);
ReservoirSpectrum load_spectrum_file(const std::string& path);
json spectrum_to_json(const ReservoirSpectrum& spec);

// Filter config object:
//   {"kind":"projective","tau":..} | {"kind":"continuous","nu":..}
//   | {"kind":"monitor","omega":..,"gamma_u":..}
// The monitor form reduces to a continuous filter with ν = 2Ω²/γ_u; a
// validity warning is set when Ω/γ_u > 0.1.
struct ParsedFilter {
    MeasurementFilter filter;
    bool monitor_validity_warning = false;
};
ParsedFilter parse_filter(const json& j);
json filter_to_json(const MeasurementFilter& f);

struct RunManifest {
    std::string command;
    json params;  // every resolved parameter, exactly as consumed
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string timestamp;  // ISO 8601 UTC

    // single '#'-prefixed line embedded at the top of each CSV
    std::string header_line() const;
};

RunManifest make_manifest(const std::string& command, json params, std::uint64_t seed);

// full-precision decimal form that round-trips to the same double
std::string format_double(double v);

struct CsvWriter {
    explicit CsvWriter(const std::string& path);  // throws ConfigError on failure
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void manifest(const RunManifest& m);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

    struct Impl;
    Impl* impl;
};

void write_json_file(const std::string& path, const json& j);

// grid spec "log:MIN:MAX:COUNT" -> log-spaced ascending values
std::vector<double> parse_grid_spec(const std::string& spec);

} // namespace zenolab::io
