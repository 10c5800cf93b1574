#include "zenolab/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "zenolab/errors.hpp"
#include "zenolab/version.hpp"

namespace zenolab::io {

namespace {

double need_number(const json& j, const char* field, const char* kind) {
    if (!j.contains(field)) {
        throw ConfigError(std::string("config '") + kind + "': missing field '" + field + "'");
    }
    if (!j[field].is_number()) {
        throw ConfigError(std::string("config '") + kind + "': field '" + field +
                          "' must be a number");
    }
    return j[field].get<double>();
}

std::vector<double> need_array(const json& j, const char* field, const char* kind) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ConfigError(std::string("spectrum '") + kind + "': missing array field '" +
                          field + "'");
    }
    std::vector<double> out;
    for (const auto& v : j[field]) {
        if (!v.is_number())
            throw ConfigError(std::string("spectrum '") + kind + "': array '" + field +
                              "' must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

ReservoirSpectrum parse_spectrum(const json& j) {
    if (!j.is_object()) throw ConfigError("spectrum config must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("spectrum config: missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "lorentzian") {
            return ReservoirSpectrum(Lorentzian{need_number(j, "C", "lorentzian"),
                                                need_number(j, "omega_m", "lorentzian"),
                                                need_number(j, "gamma_r", "lorentzian")});
        }
        if (kind == "power_law") {
            return ReservoirSpectrum(PowerLawCutoff{need_number(j, "A", "power_law"),
                                                    need_number(j, "eta", "power_law"),
                                                    need_number(j, "omega_c", "power_law")});
        }
        if (kind == "tail_cutoff") {
            return ReservoirSpectrum(
                TailCutoff{need_number(j, "A", "tail_cutoff"),
                           need_number(j, "beta", "tail_cutoff"),
                           need_number(j, "omega_c", "tail_cutoff"),
                           static_cast<int>(need_number(j, "side", "tail_cutoff")),
                           need_number(j, "gamma_r", "tail_cutoff")});
        }
        if (kind == "hydrogenic") {
            return ReservoirSpectrum(Hydrogenic{need_number(j, "alpha", "hydrogenic"),
                                                need_number(j, "omega_b", "hydrogenic")});
        }
        if (kind == "flat") {
            return ReservoirSpectrum(Flat{need_number(j, "G0", "flat"),
                                          need_number(j, "omega_lo", "flat"),
                                          need_number(j, "omega_hi", "flat")});
        }
        if (kind == "tabulated") {
            return ReservoirSpectrum(Tabulated{need_array(j, "omega", "tabulated"),
                                               need_array(j, "G", "tabulated")});
        }
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("spectrum config: ") + e.what());
    }
    throw ConfigError("spectrum config: unknown kind '" + kind + "'");
}

ReservoirSpectrum load_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("spectrum file " + path + ": " + e.what());
    }
    return parse_spectrum(j);
}

json spectrum_to_json(const ReservoirSpectrum& spec) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return {{"kind", "lorentzian"}, {"C", v.mass}, {"omega_m", v.center},
                        {"gamma_r", v.half_width}};
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return {{"kind", "power_law"}, {"A", v.amplitude}, {"eta", v.exponent},
                        {"omega_c", v.cutoff}};
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                return {{"kind", "tail_cutoff"}, {"A", v.amplitude}, {"beta", v.exponent},
                        {"omega_c", v.cutoff}, {"side", v.side}, {"gamma_r", v.inner_width}};
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                return {{"kind", "hydrogenic"}, {"alpha", v.coupling}, {"omega_b", v.corner}};
            } else if constexpr (std::is_same_v<T, Flat>) {
                return {{"kind", "flat"}, {"G0", v.level}, {"omega_lo", v.lo},
                        {"omega_hi", v.hi}};
            } else {
                return {{"kind", "tabulated"}, {"omega", v.omega}, {"G", v.g}};
            }
        },
        spec.model());
}

ParsedFilter parse_filter(const json& j) {
    if (!j.is_object()) throw ConfigError("filter config must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("filter config: missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "projective") {
            return {MeasurementFilter(ProjectiveSinc{need_number(j, "tau", "projective")}),
                    false};
        }
        if (kind == "continuous") {
            return {MeasurementFilter(ContinuousLorentzian{need_number(j, "nu", "continuous")}),
                    false};
        }
        if (kind == "monitor") {
            const auto m = filter_from_monitor(need_number(j, "omega", "monitor"),
                                               need_number(j, "gamma_u", "monitor"));
            return {m.filter, m.validity_warning};
        }
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("filter config: ") + e.what());
    }
    throw ConfigError("filter config: unknown kind '" + kind + "'");
}

json filter_to_json(const MeasurementFilter& f) {
    if (const auto* p = std::get_if<ProjectiveSinc>(&f.model())) {
        return {{"kind", "projective"}, {"tau", p->interval}};
    }
    return {{"kind", "continuous"},
            {"nu", std::get<ContinuousLorentzian>(f.model()).rate}};
}

std::string RunManifest::header_line() const {
    json j{{"command", command},
           {"params", params},
           {"seed", seed},
           {"version", tool_version},
           {"timestamp", timestamp}};
    return "# manifest " + j.dump();
}

RunManifest make_manifest(const std::string& command, json params, std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.params = std::move(params);
    m.seed = seed;
    m.tool_version = version;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
    return m;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl(new Impl) {
    impl->out.open(path);
    if (!impl->out) {
        delete impl;
        impl = nullptr;
        throw ConfigError("cannot open output file: " + path);
    }
}

CsvWriter::~CsvWriter() { delete impl; }

void CsvWriter::manifest(const RunManifest& m) { impl->out << m.header_line() << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) impl->out << ',';
        impl->out << columns[i];
    }
    impl->out << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) impl->out << ',';
        impl->out << cells[i];
    }
    impl->out << '\n';
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << j.dump(2) << '\n';
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    // log:MIN:MAX:COUNT
    if (spec.rfind("log:", 0) != 0)
        throw ConfigError("grid spec must look like log:MIN:MAX:COUNT, got '" + spec + "'");
    double lo = 0.0, hi = 0.0;
    int count = 0, consumed = 0;
    if (std::sscanf(spec.c_str(), "log:%lf:%lf:%d%n", &lo, &hi, &count, &consumed) != 3 ||
        consumed != static_cast<int>(spec.size()))
        throw ConfigError("grid spec must look like log:MIN:MAX:COUNT, got '" + spec + "'");
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw ConfigError("grid spec needs 0 < MIN < MAX and COUNT >= 2, got '" + spec + "'");
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        grid[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / (count - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

} // namespace zenolab::io
