#include "zenolab/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "zenolab/errors.hpp"
#include "zenolab/kernels.hpp"
#include "zenolab/quadrature.hpp"

namespace zenolab {

namespace {

void validate(const Lorentzian& m) {
    if (!(m.mass > 0.0) || !std::isfinite(m.mass))
        throw InvalidParameter("lorentzian: mass must be positive");
    if (!(m.half_width > 0.0) || !std::isfinite(m.half_width))
        throw InvalidParameter("lorentzian: half_width must be positive");
    if (!std::isfinite(m.center)) throw InvalidParameter("lorentzian: center must be finite");
}

void validate(const PowerLawCutoff& m) {
    if (!(m.amplitude >= 0.0) || !std::isfinite(m.amplitude))
        throw InvalidParameter("power_law: amplitude must be nonnegative");
    if (!(m.exponent > 0.0)) throw InvalidParameter("power_law: exponent must be positive");
    if (!(m.cutoff > 0.0) || !std::isfinite(m.cutoff))
        throw InvalidParameter("power_law: cutoff must be positive");
}

void validate(const TailCutoff& m) {
    if (!(m.amplitude > 0.0)) throw InvalidParameter("tail_cutoff: amplitude must be positive");
    if (!(m.exponent > 0.0 && m.exponent < 1.0))
        throw InvalidParameter("tail_cutoff: exponent must lie in (0,1)");
    if (m.side != 1 && m.side != -1) throw InvalidParameter("tail_cutoff: side must be +1 or -1");
    if (!(m.inner_width > 0.0)) throw InvalidParameter("tail_cutoff: inner_width must be positive");
    if (!std::isfinite(m.cutoff)) throw InvalidParameter("tail_cutoff: cutoff must be finite");
}

void validate(const Hydrogenic& m) {
    if (!(m.coupling >= 0.0) || !std::isfinite(m.coupling))
        throw InvalidParameter("hydrogenic: coupling must be nonnegative");
    if (!(m.corner > 0.0) || !std::isfinite(m.corner))
        throw InvalidParameter("hydrogenic: corner must be positive");
}

void validate(const Flat& m) {
    if (!(m.level >= 0.0) || !std::isfinite(m.level))
        throw InvalidParameter("flat: level must be nonnegative");
    if (!(m.hi > m.lo)) throw InvalidParameter("flat: band must have hi > lo");
    if (!std::isfinite(m.lo) || !std::isfinite(m.hi))
        throw InvalidParameter("flat: band edges must be finite");
}

void validate(const Tabulated& m) {
    if (m.omega.size() < 2) throw InvalidParameter("tabulated: need at least two grid points");
    if (m.omega.size() != m.g.size())
        throw InvalidParameter("tabulated: omega and G lengths differ");
    for (std::size_t i = 0; i < m.omega.size(); ++i) {
        if (!std::isfinite(m.omega[i]) || !std::isfinite(m.g[i]))
            throw InvalidParameter("tabulated: values must be finite");
        if (m.g[i] < 0.0) throw InvalidParameter("tabulated: G must be nonnegative");
        if (i > 0 && !(m.omega[i] > m.omega[i - 1]))
            throw InvalidParameter("tabulated: grid must be strictly increasing");
    }
}

double eval_one(const Lorentzian& m, double w) {
    const double d = w - m.center;
    return m.mass / M_PI * m.half_width / (d * d + m.half_width * m.half_width);
}

double eval_one(const PowerLawCutoff& m, double w) {
    if (w <= 0.0 || w >= m.cutoff) return 0.0;
    return m.amplitude * std::pow(w, m.exponent);
}

double eval_one(const TailCutoff& m, double w) {
    if (m.side * (w - m.cutoff) < m.inner_width) return 0.0;
    return m.amplitude * std::pow(std::fabs(w - m.cutoff), -m.exponent);
}

double eval_one(const Hydrogenic& m, double w) {
    if (w < 0.0) return 0.0;
    const double q = 1.0 + (w / m.corner) * (w / m.corner);
    const double q2 = q * q;
    return m.coupling * w / (q2 * q2);
}

double eval_one(const Flat& m, double w) {
    return (w >= m.lo && w <= m.hi) ? m.level : 0.0;
}

double eval_one(const Tabulated& m, double w) {
    if (w < m.omega.front() || w > m.omega.back()) return 0.0;
    auto it = std::upper_bound(m.omega.begin(), m.omega.end(), w);
    if (it == m.omega.begin()) return m.g.front();
    const std::size_t hi = static_cast<std::size_t>(it - m.omega.begin());
    if (hi == m.omega.size()) return m.g.back();
    const std::size_t lo = hi - 1;
    const double f = (w - m.omega[lo]) / (m.omega[hi] - m.omega[lo]);
    return m.g[lo] + f * (m.g[hi] - m.g[lo]);
}

// effective truncation of the hydrogenic tail: G <= coupling*corner^8*w^-7,
// so ∫_X^inf G <= coupling*corner^8 X^-6/6 <= eps*C at X = corner*eps^(-1/6)
double hydrogenic_span(const Hydrogenic& m) { return m.corner * 40.0; }

} // namespace

ReservoirSpectrum::ReservoirSpectrum(Model m) : model_(std::move(m)) {
    std::visit([](const auto& v) { validate(v); }, model_);
}

double ReservoirSpectrum::operator()(double omega) const {
    if (!std::isfinite(omega)) return 0.0;
    return std::visit([omega](const auto& v) { return eval_one(v, omega); }, model_);
}

void ReservoirSpectrum::eval_batch(const double* omega, double* out, std::size_t n) const {
    if (const auto* lor = std::get_if<Lorentzian>(&model_)) {
        kern::active().lorentzian_batch(omega, out, n, lor->center, lor->half_width,
                                        lor->mass / M_PI);
        return;
    }
    if (const auto* hyd = std::get_if<Hydrogenic>(&model_)) {
        kern::active().hydrogenic_batch(omega, out, n, hyd->coupling, hyd->corner);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(omega[i]);
}

SupportInterval ReservoirSpectrum::support() const {
    return std::visit(
        [](const auto& v) -> SupportInterval {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return {-kInf, kInf};
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return {0.0, v.cutoff};
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                if (v.side > 0) return {v.cutoff + v.inner_width, kInf};
                return {-kInf, v.cutoff - v.inner_width};
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                return {0.0, kInf};
            } else if constexpr (std::is_same_v<T, Flat>) {
                return {v.lo, v.hi};
            } else {
                return {v.omega.front(), v.omega.back()};
            }
        },
        model_);
}

std::vector<double> ReservoirSpectrum::breakpoints() const {
    return std::visit(
        [](const auto& v) -> std::vector<double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return {v.center - v.half_width, v.center, v.center + v.half_width};
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return {0.0, v.cutoff};
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                const double edge = v.cutoff + v.side * v.inner_width;
                return {edge, edge + v.side * v.inner_width};
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                return {0.0, v.corner / std::sqrt(7.0), v.corner};
            } else if constexpr (std::is_same_v<T, Flat>) {
                return {v.lo, v.hi};
            } else {
                // every table node is a kink
                return v.omega;
            }
        },
        model_);
}

double ReservoirSpectrum::peak_frequency() const {
    return std::visit(
        [this](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return v.center;
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return v.cutoff;  // G rises monotonically to the cutoff
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                return v.cutoff + v.side * v.inner_width;
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                return v.corner / std::sqrt(7.0);
            } else if constexpr (std::is_same_v<T, Flat>) {
                return 0.5 * (v.lo + v.hi);
            } else {
                const auto it = std::max_element(v.g.begin(), v.g.end());
                return v.omega[static_cast<std::size_t>(it - v.g.begin())];
            }
        },
        model_);
}

double ReservoirSpectrum::spectral_scale() const {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return std::fabs(v.center) + v.half_width;
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return v.cutoff;
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                return std::fabs(v.cutoff) + v.inner_width;
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                return v.corner;
            } else if constexpr (std::is_same_v<T, Flat>) {
                return std::max(std::fabs(v.lo), std::fabs(v.hi));
            } else {
                return std::max(std::fabs(v.omega.front()), std::fabs(v.omega.back()));
            }
        },
        model_);
}

double ReservoirSpectrum::kernel_scale(double omega_a) const {
    return std::visit(
        [omega_a](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return std::fabs(v.center - omega_a) + v.half_width;
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return std::max(std::fabs(omega_a), std::fabs(v.cutoff - omega_a));
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                return std::fabs(v.cutoff - omega_a) + v.inner_width;
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                // G is negligible beyond a few corner frequencies
                return std::fabs(omega_a) + 3.0 * v.corner;
            } else if constexpr (std::is_same_v<T, Flat>) {
                return std::max(std::fabs(v.lo - omega_a), std::fabs(v.hi - omega_a));
            } else {
                return std::max(std::fabs(v.omega.front() - omega_a),
                                std::fabs(v.omega.back() - omega_a));
            }
        },
        model_);
}

double ReservoirSpectrum::sup_beyond(double omega) const {
    return std::visit(
        [this, omega](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return omega <= v.center ? eval_one(v, v.center) : eval_one(v, omega);
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                if (omega >= v.cutoff) return 0.0;
                return v.amplitude * std::pow(v.cutoff, v.exponent);
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                if (v.side > 0) {
                    const double edge = v.cutoff + v.inner_width;
                    return eval_one(v, std::max(omega, edge));
                }
                const double edge = v.cutoff - v.inner_width;
                return omega > edge ? 0.0 : eval_one(v, edge);
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                const double peak = v.corner / std::sqrt(7.0);
                return omega <= peak ? eval_one(v, peak) : eval_one(v, omega);
            } else if constexpr (std::is_same_v<T, Flat>) {
                return omega <= v.hi ? v.level : 0.0;
            } else {
                double m = 0.0;
                for (std::size_t i = 0; i < v.omega.size(); ++i) {
                    if (v.omega[i] >= omega) m = std::max(m, v.g[i]);
                }
                // a kink interval straddling omega can exceed node values only
                // at its left node, which the interpolant bounds by eval
                return std::max(m, eval_one(v, omega));
            }
        },
        model_);
}

double ReservoirSpectrum::sup_before(double omega) const {
    return std::visit(
        [this, omega](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return omega >= v.center ? eval_one(v, v.center) : eval_one(v, omega);
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                if (omega <= 0.0) return 0.0;
                return v.amplitude * std::pow(std::min(omega, v.cutoff), v.exponent);
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                if (v.side < 0) {
                    const double edge = v.cutoff - v.inner_width;
                    return eval_one(v, std::min(omega, edge));
                }
                const double edge = v.cutoff + v.inner_width;
                return omega < edge ? 0.0 : eval_one(v, edge);
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                const double peak = v.corner / std::sqrt(7.0);
                return omega >= peak ? eval_one(v, peak) : eval_one(v, omega);
            } else if constexpr (std::is_same_v<T, Flat>) {
                return omega >= v.lo ? v.level : 0.0;
            } else {
                double m = 0.0;
                for (std::size_t i = 0; i < v.omega.size(); ++i) {
                    if (v.omega[i] <= omega) m = std::max(m, v.g[i]);
                }
                return std::max(m, eval_one(v, omega));
            }
        },
        model_);
}

bool ReservoirSpectrum::finite_mass() const {
    return !std::holds_alternative<TailCutoff>(model_);
}

double ReservoirSpectrum::integrated_coupling() const {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return v.mass;
            } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                return v.amplitude * std::pow(v.cutoff, v.exponent + 1.0) / (v.exponent + 1.0);
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                throw Divergent("tail_cutoff: integrated coupling diverges (exponent < 1); "
                                "use the B*nu^-beta branch");
            } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                // ∫_0^inf x/(1+x^2)^4 dx = 1/6
                return v.coupling * v.corner * v.corner / 6.0;
            } else if constexpr (std::is_same_v<T, Flat>) {
                return v.level * (v.hi - v.lo);
            } else {
                // exact integral of the piecewise-linear interpolant
                double sum = 0.0;
                for (std::size_t i = 0; i + 1 < v.omega.size(); ++i) {
                    sum += 0.5 * (v.g[i] + v.g[i + 1]) * (v.omega[i + 1] - v.omega[i]);
                }
                return sum;
            }
        },
        model_);
}

double ReservoirSpectrum::golden_rule_rate(double omega_a) const {
    return 2.0 * M_PI * (*this)(omega_a);
}

std::complex<double> ReservoirSpectrum::correlation(double t) const {
    if (t < 0.0) throw InvalidParameter("correlation: t must be >= 0");
    using C = std::complex<double>;
    return std::visit(
        [this, t](const auto& v) -> C {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return v.mass * std::exp(C(-v.half_width * t, -v.center * t));
            } else if constexpr (std::is_same_v<T, Flat>) {
                if (t == 0.0) return C(v.level * (v.hi - v.lo), 0.0);
                const double half = 0.5 * (v.hi - v.lo);
                const double mid = 0.5 * (v.hi + v.lo);
                return v.level * 2.0 * std::sin(half * t) / t * std::exp(C(0.0, -mid * t));
            } else if constexpr (std::is_same_v<T, TailCutoff>) {
                throw Divergent("tail_cutoff: correlation function diverges at t=0 "
                                "(infinite integrated coupling)");
            } else {
                // numeric Fourier quadrature over the (truncated) support
                double lo, hi;
                if constexpr (std::is_same_v<T, PowerLawCutoff>) {
                    lo = 0.0;
                    hi = v.cutoff;
                } else if constexpr (std::is_same_v<T, Hydrogenic>) {
                    lo = 0.0;
                    hi = hydrogenic_span(v);
                } else {
                    lo = v.omega.front();
                    hi = v.omega.back();
                }
                quad::Options opt;
                opt.rel_tol = 1e-7;
                // oscillation-aware seeding: panels no wider than a quarter
                // half-period of e^{-iωt}
                std::vector<double> cuts = breakpoints();
                if (t > 0.0) {
                    const double width = M_PI / (4.0 * t);
                    const std::size_t count =
                        static_cast<std::size_t>(std::min(16384.0, (hi - lo) / width));
                    for (std::size_t k = 1; k < count; ++k) {
                        cuts.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                                static_cast<double>(count));
                    }
                }
                auto seeds = quad::split_interval(lo, hi, cuts);
                quad::BatchFnC f = [this, t](const double* x, C* y, std::size_t n) {
                    double gbuf[15];
                    eval_batch(x, gbuf, n);
                    for (std::size_t i = 0; i < n; ++i) {
                        y[i] = gbuf[i] * std::exp(C(0.0, -x[i] * t));
                    }
                };
                return quad::integrate(f, seeds, opt).value;
            }
        },
        model_);
}

double ReservoirSpectrum::zeno_time() const {
    return 1.0 / std::sqrt(integrated_coupling());
}

} // namespace zenolab
