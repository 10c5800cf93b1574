#include "zenolab/filter.hpp"

#include <cmath>

#include "zenolab/errors.hpp"
#include "zenolab/kernels.hpp"
#include "zenolab/special.hpp"

namespace zenolab {

MeasurementFilter::MeasurementFilter(Model m) : model_(m) {
    if (const auto* p = std::get_if<ProjectiveSinc>(&model_)) {
        if (!(p->interval > 0.0) || !std::isfinite(p->interval))
            throw InvalidParameter("projective filter: interval must be positive");
    } else {
        const auto& c = std::get<ContinuousLorentzian>(model_);
        if (!(c.rate > 0.0) || !std::isfinite(c.rate))
            throw InvalidParameter("continuous filter: rate must be positive");
    }
}

double MeasurementFilter::operator()(double omega, double omega_a) const {
    if (const auto* p = std::get_if<ProjectiveSinc>(&model_)) {
        const double s = sinc(0.5 * (omega - omega_a) * p->interval);
        return p->interval / (2.0 * M_PI) * s * s;
    }
    const auto& c = std::get<ContinuousLorentzian>(model_);
    const double d = omega - omega_a;
    return c.rate / M_PI / (d * d + c.rate * c.rate);
}

void MeasurementFilter::eval_batch(const double* omega, double* out, std::size_t n,
                                   double omega_a) const {
    if (const auto* c = std::get_if<ContinuousLorentzian>(&model_)) {
        kern::active().lorentzian_batch(omega, out, n, omega_a, c->rate, 1.0 / M_PI);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(omega[i], omega_a);
}

double MeasurementFilter::effective_rate() const {
    if (const auto* p = std::get_if<ProjectiveSinc>(&model_)) return 2.0 / p->interval;
    return std::get<ContinuousLorentzian>(model_).rate;
}

double MeasurementFilter::mass(double lo, double hi, double omega_a) const {
    if (hi <= lo) return 0.0;
    if (const auto* p = std::get_if<ProjectiveSinc>(&model_)) {
        // substitute x = (ω-ω_a)τ/2: mass = (1/π) ∫ sinc²(x) dx
        const double a = 0.5 * (lo - omega_a) * p->interval;
        const double b = 0.5 * (hi - omega_a) * p->interval;
        return sinc_sq_integral(a, b) / M_PI;
    }
    const auto& c = std::get<ContinuousLorentzian>(model_);
    return (std::atan((hi - omega_a) / c.rate) - std::atan((lo - omega_a) / c.rate)) / M_PI;
}

MonitorFilter filter_from_monitor(double rabi, double gamma_u) {
    if (!(rabi > 0.0)) throw InvalidParameter("monitor: rabi frequency must be positive");
    if (!(gamma_u > 0.0)) throw InvalidParameter("monitor: gamma_u must be positive");
    const double nu = 2.0 * rabi * rabi / gamma_u;
    return MonitorFilter{MeasurementFilter(ContinuousLorentzian{nu}), rabi / gamma_u > 0.1};
}

} // namespace zenolab
