// rate.hpp — measurement-modified decay rates R = 2π ∫_0^∞ G(ω) F(ω) dω,
// closed-form asymptotics, thresholds, and QZE/AZE regime classification.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zenolab/filter.hpp"
#include "zenolab/spectrum.hpp"

namespace zenolab {

struct OverlapOptions {
    OverlapOptions();  // rel_tol from ZENOLAB_QUAD_TOL when set, else 1e-6
    double rel_tol;
    std::size_t max_panels = 60000;
};

struct OverlapDetail {
    double rate = 0.0;
    double error = 0.0;  // absolute error estimate of the quadrature
    // filter mass below ω = 0 excluded by the integration domain; reported
    // whenever it exceeds 1e-3
    double dropped_filter_mass = 0.0;
    std::size_t evals = 0;
    bool converged = false;
};

// Throws QuadratureFailure when the tolerance cannot be met.
double overlap_rate(const ReservoirSpectrum& spec, const MeasurementFilter& filter,
                    double omega_a, const OverlapOptions& opt = {});
OverlapDetail overlap_rate_detail(const ReservoirSpectrum& spec,
                                  const MeasurementFilter& filter, double omega_a,
                                  const OverlapOptions& opt = {});

// Exact continuous-filter rate for G = A ω^η on (0, ω_C): analytic evaluation
// of 2Aν ∫_0^{ω_C} ω^η/((ω-ω_a)²+ν²) dω, continuous across η → 1. Asymptotic
// reductions: the sub-linear, logarithmic and super-linear branch formulas.
// Throws OutOfRegime for ν ≥ ω_C/10 (and, on the non-integer-η path,
// ω_a > ω_C/4 where the cutoff expansion stops converging).
double closed_form_powerlaw_rate(double amplitude, double exponent, double omega_c,
                                 double omega_a, double nu);

// High-ν decay asymptote: 2C/ν for finite-mass spectra; B ν^(-β) for the
// slow-tail family. Unsupported for Flat (no QZE scaling exists).
double qze_asymptote(const ReservoirSpectrum& spec, double nu);

// tail prefactor B = [2^β π / (cos(πβ/2) Γ(2+β))] A ; Unsupported unless TailCutoff
double tail_prefactor(const ReservoirSpectrum& spec);

// R ≈ α ν [ln(ω_B/ν) + 0.354] for ω_a ≪ ν ≪ ω_B (pulsed projections)
double hydrogenic_aze_asymptote(double coupling, double corner, double nu);

// ν above which R drops below the Golden Rule rate:
// C/(π G(ω_a)) for finite mass, [B/(2π G(ω_a))]^(1/β) for the slow tail.
double genuine_qze_threshold(const ReservoirSpectrum& spec, double omega_a);

// interval around ω_a over which G changes by more than half of G(ω_a);
// analytic for the power-law and flat families, numeric search otherwise
double delta_a_estimate(const ReservoirSpectrum& spec, double omega_a);

enum class FilterFamily { projective, continuous };
enum class Regime { golden_rule, aze, qze_scaling, genuine_qze };
const char* regime_name(Regime r);

struct RateSample {
    double nu;
    double rate;
    Regime regime;
    bool poisoned;  // quadrature failed at this ν
    double dropped_filter_mass;
};

struct RateCurve {
    double omega_a;
    FilterFamily family;
    std::vector<RateSample> samples;  // sorted by ν
    double golden_rule;
    std::optional<double> nu_qze;
    std::optional<double> nu_turnover;  // ν₁, argmax of R when interior
    std::optional<double> delta_a;
    // fixed classification thresholds, echoed in output metadata
    double gr_band = 0.05;
    double aze_band = 0.05;
};

RateCurve rate_curve(const ReservoirSpectrum& spec, FilterFamily family, double omega_a,
                     const std::vector<double>& nu_grid, const OverlapOptions& opt = {},
                     unsigned threads = 0);

MeasurementFilter make_filter(FilterFamily family, double nu);

} // namespace zenolab
