// spectrum.hpp — reservoir coupling-spectrum families G(omega)
//
// Conventions: all frequencies angular (rad/s); G carries rad/s so that the
// integrated coupling C = ∫G dω has units rad^2/s^2 and the overlap rate
// 2π∫G·F dω (with ∫F dω = 1) comes out in 1/s.

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

namespace zenolab {

// Full Lorentzian line on (-inf, inf): G = (mass/π) · half_width / ((ω-center)^2 + half_width^2).
// Stands in for peak-shaped reservoirs; gives an exact analytic correlation
// function mass·exp(-(half_width + i·center)·t).
struct Lorentzian {
    double mass;        // C = ∫G dω
    double center;      // ω_M
    double half_width;  // Γ_R
};

// G = amplitude · ω^exponent on (0, cutoff), zero otherwise.
struct PowerLawCutoff {
    double amplitude;  // A
    double exponent;   // η > 0
    double cutoff;     // ω_C
};

// Peak-shaped reservoir with a slowly decreasing tail:
// G = amplitude · |ω-cutoff|^(-exponent) where side·(ω-cutoff) >= inner_width,
// zero elsewhere (hard cutoff). ∫G dω diverges (exponent < 1).
struct TailCutoff {
    double amplitude;    // A
    double exponent;     // β in (0,1)
    double cutoff;       // ω_c
    int side;            // +1 tail to the right, -1 to the left
    double inner_width;  // Γ_R > 0
};

// Hydrogenic radiative coupling: G = coupling·ω / (1 + (ω/corner)^2)^4 on ω >= 0.
struct Hydrogenic {
    double coupling;  // α (dimensionless)
    double corner;    // ω_B
};

struct Flat {
    double level;  // G0
    double lo;
    double hi;
};

// Piecewise-linear table on a strictly increasing grid; zero outside.
struct Tabulated {
    std::vector<double> omega;
    std::vector<double> g;
};

struct SupportInterval {
    double lo;
    double hi;
};

class ReservoirSpectrum {
public:
    using Model = std::variant<Lorentzian, PowerLawCutoff, TailCutoff,
                               Hydrogenic, Flat, Tabulated>;

    explicit ReservoirSpectrum(Model m);  // throws InvalidParameter

    double operator()(double omega) const;
    void eval_batch(const double* omega, double* out, std::size_t n) const;

    SupportInterval support() const;
    // frequencies where G has kinks/peaks/edges; quadrature seeds split here
    std::vector<double> breakpoints() const;
    double peak_frequency() const;  // ω_m
    // characteristic frequency extent (solver step guard, panel sizing)
    double spectral_scale() const;
    // variation scale of the rotating-frame memory kernel e^{iω_a t}Φ(t):
    // max |ω - ω_a| over the G-weighted support, plus the spectral width
    double kernel_scale(double omega_a) const;
    // sup of G on [omega, ∞) / (-∞, omega] — tail bounds for early termination
    double sup_beyond(double omega) const;
    double sup_before(double omega) const;

    bool finite_mass() const;
    double integrated_coupling() const;               // C; throws Divergent
    double golden_rule_rate(double omega_a) const;    // 2π G(ω_a)
    std::complex<double> correlation(double t) const; // Φ(t); throws Divergent (TailCutoff)
    double zeno_time() const;                         // 1/√C

    const Model& model() const { return model_; }

private:
    Model model_;
};

// spec-facing operation names
inline double eval_spectrum(const ReservoirSpectrum& s, double omega) { return s(omega); }
inline double integrated_coupling(const ReservoirSpectrum& s) { return s.integrated_coupling(); }
inline double golden_rule_rate(const ReservoirSpectrum& s, double omega_a) {
    return s.golden_rule_rate(omega_a);
}
inline std::complex<double> correlation_function(const ReservoirSpectrum& s, double t) {
    return s.correlation(t);
}
inline double zeno_time(const ReservoirSpectrum& s) { return s.zeno_time(); }

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace zenolab
