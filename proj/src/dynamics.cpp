#include "zenolab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "zenolab/errors.hpp"
#include "zenolab/kernels.hpp"
#include "zenolab/quadrature.hpp"

namespace zenolab {

namespace {

double solver_scale(const ReservoirSpectrum& spec, double omega_a) {
    double scale = std::max(std::fabs(omega_a), spec.spectral_scale());
    if (spec.finite_mass()) {
        // solution curvature ~ C; resolve the Rabi-like scale √C as well
        scale = std::max(scale, std::sqrt(spec.integrated_coupling()));
    }
    return scale;
}

// accuracy is governed by the rotating-frame kernel, not by |ω_a| itself
double accuracy_scale(const ReservoirSpectrum& spec, double omega_a) {
    double scale = spec.kernel_scale(omega_a);
    if (spec.finite_mass()) scale = std::max(scale, std::sqrt(spec.integrated_coupling()));
    return scale;
}

} // namespace

SurvivalRecord solve_survival_amplitude(const ReservoirSpectrum& spec, double omega_a,
                                        double t_max, std::size_t steps,
                                        const SolverOptions& opt) {
    if (!(t_max > 0.0)) throw InvalidParameter("solve: t_max must be positive");
    if (steps < 16) throw InvalidParameter("solve: need at least 16 steps");

    const double dt = t_max / static_cast<double>(steps);
    const double scale = solver_scale(spec, omega_a);
    if (dt * scale > 0.2) {
        throw StepTooCoarse("solve: dt * frequency scale = " + std::to_string(dt * scale) +
                            " exceeds 0.2; increase steps");
    }

    const std::size_t n = steps + 1;

    // kernel K_j = e^{iω_a jΔt} Φ(jΔt), sampled once and cached (SoA for the
    // convolution kernel)
    double horizon = kInf;
    if (opt.memory_horizon) {
        horizon = *opt.memory_horizon;
        const double phi0 = std::abs(spec.correlation(0.0));
        const double phih = std::abs(spec.correlation(horizon));
        if (phi0 > 0.0 && !(phih < 1e-8 * phi0)) {
            throw InvalidParameter("solve: memory horizon too short, |Phi| not yet negligible");
        }
    }
    std::vector<double> kr(n), ki(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = dt * static_cast<double>(j);
        std::complex<double> k(0.0, 0.0);
        if (t <= horizon) {
            k = std::exp(std::complex<double>(0.0, omega_a * t)) * spec.correlation(t);
        }
        kr[j] = k.real();
        ki[j] = k.imag();
    }

    SurvivalRecord rec;
    rec.omega_a = omega_a;
    rec.dt = dt;
    rec.memory_horizon = horizon;
    rec.alpha.resize(n);

    // trapezoidal product integration, implicit in the newest value:
    //   α̇_k = -Δt [ K_0 α_k / 2 + Σ_{j=1}^{k-1} K_j α_{k-j} + K_k α_0 / 2 ]
    //   α_{k+1} = α_k + Δt (α̇_k + α̇_{k+1}) / 2, solved for α_{k+1}
    std::vector<double> ar(n), ai(n);
    ar[0] = 1.0;
    ai[0] = 0.0;
    rec.alpha[0] = {1.0, 0.0};

    const std::complex<double> k0(kr[0], ki[0]);
    const auto& ops = kern::active();
    std::complex<double> adot_prev(0.0, 0.0);  // α̇(0) = 0

    for (std::size_t k = 1; k < n; ++k) {
        // S = Σ_{j=1}^{k-1} K_j α_{k-j} + K_k α_0 / 2
        std::complex<double> s(0.0, 0.0);
        if (k >= 2) {
            double sr, si;
            // kernel offsets 1..k-1 against amplitudes α_1..α_{k-1} reversed
            ops.cplx_conv_dot(kr.data() + 1, ki.data() + 1, ar.data() + 1, ai.data() + 1,
                              k - 1, &sr, &si);
            s = {sr, si};
        }
        s += 0.5 * std::complex<double>(kr[k], ki[k]);  // α_0 = 1

        const std::complex<double> rhs =
            rec.alpha[k - 1] + 0.5 * dt * adot_prev - 0.5 * dt * dt * s;
        const std::complex<double> denom = 1.0 + 0.25 * dt * dt * k0;
        const std::complex<double> a_new = rhs / denom;

        rec.alpha[k] = a_new;
        ar[k] = a_new.real();
        ai[k] = a_new.imag();
        adot_prev = -dt * (0.5 * k0 * a_new + s);
    }
    return rec;
}

std::complex<double> lorentzian_amplitude_oracle(double mass, double center,
                                                 double half_width, double omega_a,
                                                 double t) {
    if (!(half_width > 0.0)) throw InvalidParameter("oracle: half_width must be positive");
    if (mass == 0.0) return {1.0, 0.0};
    using C = std::complex<double>;
    const C g(half_width, center - omega_a);
    const C disc = std::sqrt(g * g - 4.0 * mass);
    const C lp = 0.5 * (-g + disc);
    const C lm = 0.5 * (-g - disc);
    if (std::abs(lp - lm) < 1e-12 * std::abs(g)) {
        // confluent double root λ0 = -g/2: α = (1 - λ0 t) e^{λ0 t}
        const C l0 = -0.5 * g;
        return (1.0 - l0 * t) * std::exp(l0 * t);
    }
    return (lp * std::exp(lm * t) - lm * std::exp(lp * t)) / (lp - lm);
}

std::complex<double> short_time_amplitude(const ReservoirSpectrum& spec, double omega_a,
                                          double t) {
    if (t < 0.0) throw InvalidParameter("short_time_amplitude: t must be >= 0");
    if (t == 0.0) return {1.0, 0.0};
    using C = std::complex<double>;
    quad::Options opt;
    opt.rel_tol = 1e-10;
    quad::BatchFnC f = [&spec, omega_a, t](const double* x, C* y, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = (t - x[i]) * spec.correlation(x[i]) *
                   std::exp(C(0.0, omega_a * x[i]));
        }
    };
    const auto r = quad::integrate(f, {{0.0, t}}, opt);
    return 1.0 - r.value;
}

MeasuredDecayLaw measured_decay_law(const ReservoirSpectrum& spec, double omega_a,
                                    double tau, std::size_t n_max) {
    if (!(tau > 0.0)) throw InvalidParameter("measured_decay_law: tau must be positive");
    const double acc_steps = std::ceil(tau * accuracy_scale(spec, omega_a) / 0.005);
    const double guard_steps = std::ceil(tau * solver_scale(spec, omega_a) / 0.19);
    std::size_t steps = static_cast<std::size_t>(std::max(acc_steps, guard_steps));
    steps = std::clamp<std::size_t>(steps, 512, 200000);

    const auto rec = solve_survival_amplitude(spec, omega_a, tau, steps);
    MeasuredDecayLaw law;
    law.tau = tau;
    law.alpha_tau = rec.alpha.back();
    const double p1 = std::norm(law.alpha_tau);
    law.rho_ee.resize(n_max + 1);
    law.rho_ee[0] = 1.0;
    for (std::size_t i = 1; i <= n_max; ++i) law.rho_ee[i] = law.rho_ee[i - 1] * p1;
    law.effective_rate = -std::log(p1) / tau;
    return law;
}

} // namespace zenolab
