// polarization.hpp — photon-polarization decay in a noise-driven cavity
//
// One round trip: the rotator turns the polarization by Δφ_n, then the
// PBS + absorber transmits the vertical amplitude with factor θ (θ = 0 is a
// perfect projection onto horizontal, θ = 1 no measurement). Phase jumps are
// either constant or a stationary Gaussian AR(1) sequence with rms B and
// lag-1 correlation γ.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "zenolab/spectrum.hpp"

namespace zenolab {

struct PolarizationState {
    std::complex<double> a_h{1.0, 0.0};
    std::complex<double> a_v{0.0, 0.0};

    double norm() const { return std::norm(a_h) + std::norm(a_v); }
    double p_h() const { return std::norm(a_h); }
};

struct NoiseModel {
    enum class Mode { constant, gaussian_ar1 };
    Mode mode = Mode::gaussian_ar1;
    double rms = 0.0;            // B (rad), gaussian_ar1 only
    double correlation = 0.0;    // γ ∈ (-1, 1), gaussian_ar1 only
    double constant_jump = 0.0;  // Δφ (rad), constant mode only

    static NoiseModel constant(double jump) {
        return {Mode::constant, 0.0, 0.0, jump};
    }
    static NoiseModel ar1(double rms, double correlation) {
        return {Mode::gaussian_ar1, rms, correlation, 0.0};
    }
};

struct CavityConfig {
    double round_trip_time;  // τ_r (s); 1.0 treats τ_r as the time unit
    double transparency;     // θ ∈ [0, 1]
};

// effective measurement rate of the PBS + absorber: ν = 2(1-θ)/[(1+θ)τ_r]
double measurement_rate(const CavityConfig& config);

// deterministic given (seed); throws InvalidParameter for |γ| >= 1
std::vector<double> sample_phase_jumps(const NoiseModel& noise, std::size_t n,
                                       std::uint64_t seed);

PolarizationState round_trip(const PolarizationState& state, double dphi, double theta);

struct PolarizationSeries {
    std::vector<double> mean_ph;   // ⟨P_h(n)⟩, n = 0..n_trips
    std::vector<double> stderr_ph; // standard error of the mean
    std::size_t shots = 0;
};

// Mean horizontal survival over independently seeded noise realizations.
// Per-shot streams derive from (seed, shot index) and block sums reduce in
// fixed order, so the result is bit-identical for any thread count.
PolarizationSeries simulate_polarization(const CavityConfig& config, const NoiseModel& noise,
                                         std::size_t n_trips, std::size_t shots,
                                         std::uint64_t seed, unsigned threads = 0);

// Rotation-rate reservoir spectrum of the AR(1) jump process on the band
// |ω| <= π/τ_r:  G(ω) = (B²/2πτ_r)(1-γ²)/(1+γ²-2γ cos ωτ_r).
// Constant-jump noise corresponds to γ → 1 (delta reservoir at ω = 0).
double jump_spectrum(const NoiseModel& noise, double tau_r, double omega);

// band-limited overlap rate 2π ∫_{-π/τ_r}^{π/τ_r} G(ω) F(ω) dω with the
// continuous filter of width measurement_rate(config) centered at ω = 0
double band_overlap_rate(const CavityConfig& config, const NoiseModel& noise);

} // namespace zenolab
