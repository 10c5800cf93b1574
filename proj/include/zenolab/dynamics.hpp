// dynamics.hpp — exact survival-amplitude dynamics
//
// Solves α̇(t) = -∫_0^t K(t-t') α(t') dt' with memory kernel
// K(s) = e^{iω_a s} Φ(s), by second-order trapezoidal product integration on a
// uniform grid. The kernel is sampled once per grid offset; the O(N²)
// convolution sums run through the dispatched SIMD kernels.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "zenolab/spectrum.hpp"

namespace zenolab {

struct SurvivalRecord {
    double omega_a;
    double dt;
    std::vector<std::complex<double>> alpha;  // alpha[k] at t = k·dt, alpha[0] = 1
    int scheme_order = 2;
    double memory_horizon = kInf;  // kernel truncation, ∞ when off

    double t(std::size_t k) const { return dt * static_cast<double>(k); }
    double survival(std::size_t k) const { return std::norm(alpha[k]); }
};

struct SolverOptions {
    // optional memory truncation: kernel treated as zero beyond this horizon;
    // requires |Φ(horizon)| < 1e-8 Φ(0)
    std::optional<double> memory_horizon;
};

// Throws StepTooCoarse when dt·max(|ω_a|, spectral scale) > 0.2.
SurvivalRecord solve_survival_amplitude(const ReservoirSpectrum& spec, double omega_a,
                                        double t_max, std::size_t steps,
                                        const SolverOptions& opt = {});

// Closed-form α(t) for the Lorentzian reservoir: Φ(t) = C e^{-(Γ_R + iω_M)t}
// turns the memory equation into α̈ + gα̇ + Cα = 0, g = Γ_R + i(ω_M - ω_a),
// with α(0) = 1, α̇(0) = 0. Roots λ± of λ² + gλ + C = 0 give
// α = [λ₊ e^{λ₋ t} - λ₋ e^{λ₊ t}]/(λ₊ - λ₋); confluent limit handled.
std::complex<double> lorentzian_amplitude_oracle(double mass, double center,
                                                 double half_width, double omega_a,
                                                 double t);

// leading short-time expansion α(t) = 1 - ∫_0^t (t-t') Φ(t') e^{iω_a t'} dt';
// valid while |1-α| ≪ 1
std::complex<double> short_time_amplitude(const ReservoirSpectrum& spec, double omega_a,
                                          double t);

struct MeasuredDecayLaw {
    double tau;
    std::complex<double> alpha_tau;
    std::vector<double> rho_ee;    // |α(τ)|^{2n}, n = 0..n_max
    double effective_rate;         // -2 ln|α(τ)| / τ
};

// survival under projective measurements every τ; the solver grid is chosen
// internally (dt·scale <= 0.02, N in [512, 200000])
MeasuredDecayLaw measured_decay_law(const ReservoirSpectrum& spec, double omega_a,
                                    double tau, std::size_t n_max);

} // namespace zenolab
