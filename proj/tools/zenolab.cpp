// zenolab — measurement-modified decay rates: spectra, filters, survival
// dynamics, and the polarization cavity experiment, as plot-ready CSV/JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zenolab/dynamics.hpp"
#include "zenolab/errors.hpp"
#include "zenolab/filter.hpp"
#include "zenolab/io.hpp"
#include "zenolab/polarization.hpp"
#include "zenolab/rate.hpp"
#include "zenolab/spectrum.hpp"
#include "zenolab/version.hpp"

using namespace zenolab;
using zenolab::io::json;

namespace {

// documented fixed default: runs without --seed are still reproducible
constexpr std::uint64_t kDefaultSeed = 24601;

std::string fd(double v) { return io::format_double(v); }

struct RateArgs {
    std::string spectrum_file;
    std::string filter_kind = "continuous";
    double omega_a = 0.0;
    std::string nu_grid;
    std::string out;
    std::string json_summary;
    unsigned threads = 0;
};

int run_rate(const RateArgs& a) {
    const auto spec = io::load_spectrum_file(a.spectrum_file);
    FilterFamily family;
    if (a.filter_kind == "projective") family = FilterFamily::projective;
    else if (a.filter_kind == "continuous" || a.filter_kind == "monitor")
        family = FilterFamily::continuous;
    else throw ConfigError("--filter must be projective, continuous or monitor");

    const auto grid = io::parse_grid_spec(a.nu_grid);
    const auto curve = rate_curve(spec, family, a.omega_a, grid, {}, a.threads);

    json params{{"spectrum", io::spectrum_to_json(spec)},
                {"filter", a.filter_kind},
                {"omega_a", a.omega_a},
                {"nu_grid", a.nu_grid},
                {"threads", a.threads},
                {"gr_band", curve.gr_band},
                {"aze_band", curve.aze_band}};
    const auto manifest = io::make_manifest("rate", params, kDefaultSeed);

    io::CsvWriter csv(a.out);
    csv.manifest(manifest);
    csv.header({"nu", "R", "R_over_RGR", "regime"});
    bool any_poisoned = false;
    for (const auto& s : curve.samples) {
        if (s.poisoned) {
            any_poisoned = true;
            csv.row({fd(s.nu), "nan", "nan", "ERROR"});
            continue;
        }
        const double ratio = curve.golden_rule > 0.0 ? s.rate / curve.golden_rule
                                                     : std::numeric_limits<double>::quiet_NaN();
        csv.row({fd(s.nu), fd(s.rate), fd(ratio), regime_name(s.regime)});
    }

    if (!a.json_summary.empty()) {
        json summary{{"R_GR", curve.golden_rule}};
        summary["nu_QZE"] = curve.nu_qze ? json(*curve.nu_qze) : json(nullptr);
        summary["nu_1"] = curve.nu_turnover ? json(*curve.nu_turnover) : json(nullptr);
        summary["delta_a"] = curve.delta_a ? json(*curve.delta_a) : json(nullptr);
        // filter mass below omega = 0 is excluded by the rate integral;
        // reported once it stops being negligible
        double dropped = 0.0;
        for (const auto& s : curve.samples) dropped = std::max(dropped, s.dropped_filter_mass);
        if (dropped > 1e-3) summary["max_dropped_filter_mass"] = dropped;
        summary["manifest"] = manifest.params;
        io::write_json_file(a.json_summary, summary);
    }
    if (any_poisoned) throw QuadratureFailure("rate: quadrature failed at one or more nu", 0.0);
    return 0;
}

struct DecayArgs {
    std::string spectrum_file;
    double omega_a = 0.0;
    double t_max = 0.0;
    std::size_t steps = 1024;
    std::optional<double> tau;
    std::string tau_grid;
    std::size_t n_max = 64;
    std::string out;
};

int run_decay(const DecayArgs& a) {
    const auto spec = io::load_spectrum_file(a.spectrum_file);
    json params{{"spectrum", io::spectrum_to_json(spec)},
                {"omega_a", a.omega_a},
                {"t_max", a.t_max},
                {"steps", a.steps},
                {"n_max", a.n_max}};
    if (a.tau) params["tau"] = *a.tau;
    if (!a.tau_grid.empty()) params["tau_grid"] = a.tau_grid;
    const auto manifest = io::make_manifest("decay", params, kDefaultSeed);

    io::CsvWriter csv(a.out);
    csv.manifest(manifest);

    if (!a.tau_grid.empty()) {
        // measurement-interval sweep: effective decay rate per tau
        const auto taus = io::parse_grid_spec(a.tau_grid);
        csv.header({"tau", "nu", "R_eff"});
        for (double tau : taus) {
            const auto law = measured_decay_law(spec, a.omega_a, tau, 1);
            csv.row({fd(tau), fd(2.0 / tau), fd(law.effective_rate)});
        }
        return 0;
    }
    if (a.tau) {
        const auto law = measured_decay_law(spec, a.omega_a, *a.tau, a.n_max);
        csv.header({"n", "t", "rho_ee"});
        for (std::size_t n = 0; n < law.rho_ee.size(); ++n) {
            csv.row({std::to_string(n), fd(static_cast<double>(n) * law.tau), fd(law.rho_ee[n])});
        }
        return 0;
    }
    const auto rec = solve_survival_amplitude(spec, a.omega_a, a.t_max, a.steps);
    csv.header({"t", "re_alpha", "im_alpha", "survival"});
    for (std::size_t k = 0; k < rec.alpha.size(); ++k) {
        csv.row({fd(rec.t(k)), fd(rec.alpha[k].real()), fd(rec.alpha[k].imag()),
                 fd(rec.survival(k))});
    }
    return 0;
}

struct PolarArgs {
    double gamma = 0.0;
    double jump_rms = 0.0;
    std::optional<double> constant_jump;
    double theta = 0.0;
    double tau_r = 1.0;
    std::size_t trips = 100;
    std::size_t shots = 1000;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    std::string out;
};

int run_polarization(const PolarArgs& a) {
    const CavityConfig config{a.tau_r, a.theta};
    const NoiseModel noise = a.constant_jump ? NoiseModel::constant(*a.constant_jump)
                                             : NoiseModel::ar1(a.jump_rms, a.gamma);

    json params{{"theta", a.theta},       {"tau_r", a.tau_r}, {"trips", a.trips},
                {"shots", a.shots},       {"seed", a.seed},   {"threads", a.threads}};
    if (a.constant_jump) params["constant_jump"] = *a.constant_jump;
    else {
        params["gamma"] = a.gamma;
        params["jump_rms"] = a.jump_rms;
    }
    const auto manifest = io::make_manifest("polarization", params, a.seed);

    const auto series = simulate_polarization(config, noise, a.trips, a.shots, a.seed, a.threads);

    io::CsvWriter csv(a.out);
    csv.manifest(manifest);
    csv.header({"n", "t", "mean_Ph", "stderr"});
    for (std::size_t n = 0; n < series.mean_ph.size(); ++n) {
        csv.row({std::to_string(n), fd(static_cast<double>(n) * a.tau_r), fd(series.mean_ph[n]),
                 fd(series.stderr_ph[n])});
    }
    return 0;
}

struct ClassifyArgs {
    std::string spectrum_file;
    double omega_a = 0.0;
    std::string out;
};

int run_classify(const ClassifyArgs& a) {
    const auto spec = io::load_spectrum_file(a.spectrum_file);
    json out{{"omega_a", a.omega_a}};
    out["R_GR"] = spec.golden_rule_rate(a.omega_a);

    try {
        out["C"] = spec.integrated_coupling();
        out["tau_Z"] = spec.zeno_time();
    } catch (const Divergent& e) {
        out["C"] = nullptr;
        out["tau_Z"] = nullptr;
        out["C_reason"] = e.what();
    }
    if (const auto* t = std::get_if<TailCutoff>(&spec.model())) {
        out["B"] = tail_prefactor(spec);
        out["beta"] = t->exponent;
    }
    try {
        out["nu_QZE"] = genuine_qze_threshold(spec, a.omega_a);
    } catch (const Error& e) {
        out["nu_QZE"] = nullptr;
        out["nu_QZE_reason"] = std::holds_alternative<Flat>(spec.model())
                                   ? "no QZE scaling"
                                   : std::string(e.what());
    }
    try {
        out["delta_a"] = delta_a_estimate(spec, a.omega_a);
    } catch (const Error& e) {
        out["delta_a"] = nullptr;
        out["delta_a_reason"] = e.what();
    }
    // regime boundaries: Golden Rule plateau below delta_a, genuine QZE above nu_QZE
    json bounds = json::object();
    if (out["delta_a"].is_number()) bounds["golden_rule_below"] = out["delta_a"];
    if (out["nu_QZE"].is_number()) bounds["genuine_qze_above"] = out["nu_QZE"];
    out["regime_boundaries"] = bounds;
    out["manifest"] = io::make_manifest("classify",
                                        json{{"spectrum", io::spectrum_to_json(spec)},
                                             {"omega_a", a.omega_a}},
                                        kDefaultSeed)
                          .params;

    if (a.out.empty()) {
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        io::write_json_file(a.out, out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zenolab — measurement-modified decay rate toolkit"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    RateArgs rate_args;
    auto* rate_cmd = app.add_subcommand("rate", "Decay rate R(nu) over a measurement-rate grid");
    rate_cmd->add_option("--spectrum", rate_args.spectrum_file, "spectrum config JSON file")
        ->required();
    rate_cmd->add_option("--filter", rate_args.filter_kind,
                         "projective | continuous | monitor");
    rate_cmd->add_option("--omega-a", rate_args.omega_a, "measured level frequency (rad/s)")
        ->required();
    rate_cmd->add_option("--nu-grid", rate_args.nu_grid, "log:MIN:MAX:COUNT")->required();
    rate_cmd->add_option("--out", rate_args.out, "output CSV path")->required();
    rate_cmd->add_option("--json-summary", rate_args.json_summary, "summary JSON sidecar path");
    rate_cmd->add_option("--threads", rate_args.threads, "worker threads (0 = hardware)");

    DecayArgs decay_args;
    auto* decay_cmd =
        app.add_subcommand("decay", "Survival amplitude / measured decay law");
    decay_cmd->add_option("--spectrum", decay_args.spectrum_file, "spectrum config JSON file")
        ->required();
    decay_cmd->add_option("--omega-a", decay_args.omega_a, "measured level frequency (rad/s)")
        ->required();
    decay_cmd->add_option("--t-max", decay_args.t_max, "solve horizon (s)");
    decay_cmd->add_option("--steps", decay_args.steps, "uniform grid steps");
    double tau_value = 0.0;
    auto* tau_opt = decay_cmd->add_option("--tau", tau_value, "measurement interval (s)");
    decay_cmd->add_option("--tau-grid", decay_args.tau_grid,
                          "log:MIN:MAX:COUNT sweep of measurement intervals");
    decay_cmd->add_option("--n-max", decay_args.n_max, "measurements in the decay law");
    decay_cmd->add_option("--out", decay_args.out, "output CSV path")->required();

    PolarArgs polar_args;
    auto* polar_cmd =
        app.add_subcommand("polarization", "Monte Carlo photon-polarization decay");
    polar_cmd->add_option("--gamma", polar_args.gamma, "lag-1 jump correlation in (-1,1)");
    polar_cmd->add_option("--jump-rms", polar_args.jump_rms, "rms phase jump B (rad)");
    double const_jump = 0.0;
    auto* cj_opt = polar_cmd->add_option("--constant-jump", const_jump,
                                         "use constant jumps of this size (rad)");
    polar_cmd->add_option("--theta", polar_args.theta, "absorber amplitude transparency [0,1]")
        ->required();
    polar_cmd->add_option("--tau-r", polar_args.tau_r, "round-trip time (default 1 = time unit)");
    polar_cmd->add_option("--trips", polar_args.trips, "round trips")->required();
    polar_cmd->add_option("--shots", polar_args.shots, "noise realizations")->required();
    polar_cmd->add_option("--seed", polar_args.seed, "PRNG seed (fixed default when absent)");
    polar_cmd->add_option("--threads", polar_args.threads, "worker threads (0 = hardware)");
    polar_cmd->add_option("--out", polar_args.out, "output CSV path")->required();

    ClassifyArgs classify_args;
    auto* classify_cmd =
        app.add_subcommand("classify", "Spectrum summary: R_GR, C, tau_Z, thresholds");
    classify_cmd
        ->add_option("--spectrum", classify_args.spectrum_file, "spectrum config JSON file")
        ->required();
    classify_cmd->add_option("--omega-a", classify_args.omega_a, "measured level frequency")
        ->required();
    classify_cmd->add_option("--out", classify_args.out, "output JSON path (stdout if absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rate_cmd) return run_rate(rate_args);
        if (*decay_cmd) {
            if (*tau_opt) decay_args.tau = tau_value;
            return run_decay(decay_args);
        }
        if (*polar_cmd) {
            if (*cj_opt) polar_args.constant_jump = const_jump;
            return run_polarization(polar_args);
        }
        if (*classify_cmd) return run_classify(classify_args);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const QuadratureFailure& e) {
        std::fprintf(stderr, "quadrature failure: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
