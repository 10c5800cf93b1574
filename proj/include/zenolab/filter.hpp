// filter.hpp — measurement-induced level-broadening profiles F(omega)
//
// Two closed families, both normalized to unit area over (-inf, inf):
//   ProjectiveSinc       F = (τ/2π) sinc²((ω-ω_a)τ/2)   — pulsed projections
//   ContinuousLorentzian F = (ν/π) / ((ω-ω_a)² + ν²)    — continuous monitoring
// The measured-level frequency ω_a is a call-site parameter, not state: one
// filter sweeps many level positions.

#pragma once

#include <cstddef>
#include <variant>

namespace zenolab {

struct ProjectiveSinc {
    double interval;  // τ > 0, spacing of projections
};

struct ContinuousLorentzian {
    double rate;  // ν > 0, effective measurement rate = half-width
};

class MeasurementFilter {
public:
    using Model = std::variant<ProjectiveSinc, ContinuousLorentzian>;

    explicit MeasurementFilter(Model m);  // throws InvalidParameter

    double operator()(double omega, double omega_a) const;
    void eval_batch(const double* omega, double* out, std::size_t n, double omega_a) const;

    // ν = [π F(ω_a)]⁻¹ : 2/τ for sinc², the width parameter for Lorentzian
    double effective_rate() const;

    // mass of F on [lo, hi], analytic (sinc² via the sine integral)
    double mass(double lo, double hi, double omega_a) const;

    bool is_projective() const { return std::holds_alternative<ProjectiveSinc>(model_); }
    const Model& model() const { return model_; }

private:
    Model model_;
};

struct MonitorFilter {
    MeasurementFilter filter;
    // set when the drive is too strong for the stationary-dephasing reduction
    // (Ω/γ_u > 0.1)
    bool validity_warning;
};

// Continuous filter equivalent to driving the monitored transition at Rabi
// frequency Ω against an auxiliary level decaying at γ_u: ν = 2Ω²/γ_u.
MonitorFilter filter_from_monitor(double rabi, double gamma_u);

inline double eval_filter(const MeasurementFilter& f, double omega, double omega_a) {
    return f(omega, omega_a);
}
inline double effective_rate(const MeasurementFilter& f, double /*omega_a*/ = 0.0) {
    return f.effective_rate();
}

} // namespace zenolab
