#include "zenolab/rate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <thread>

#include "zenolab/errors.hpp"
#include "zenolab/quadrature.hpp"

namespace zenolab {

OverlapOptions::OverlapOptions() : rel_tol(1e-6) {
    if (const char* env = std::getenv("ZENOLAB_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && v < 1.0) rel_tol = v;
    }
}

namespace {

struct Domain {
    double lo, hi;  // support ∩ [0, ∞)
    bool empty;
};

Domain overlap_domain(const ReservoirSpectrum& spec) {
    const auto supp = spec.support();
    const double lo = std::max(0.0, supp.lo);
    if (!(supp.hi > lo)) return {0.0, 0.0, true};
    return {lo, supp.hi, false};
}

// ∫ G·F over [a,b] with panels split at spectral features and filter scales
quad::Result<double> integrate_product(const ReservoirSpectrum& spec,
                                       const MeasurementFilter& filter, double omega_a,
                                       double a, double b, std::vector<double> cuts,
                                       const quad::Options& qopt) {
    quad::BatchFn f = [&spec, &filter, omega_a](const double* x, double* y, std::size_t n) {
        double g[15];
        spec.eval_batch(x, g, n);
        filter.eval_batch(x, y, n, omega_a);
        for (std::size_t i = 0; i < n; ++i) y[i] *= g[i];
    };
    return quad::integrate(f, quad::split_interval(a, b, cuts), qopt);
}

OverlapDetail overlap_continuous(const ReservoirSpectrum& spec, const MeasurementFilter& filter,
                                 double omega_a, const OverlapOptions& opt) {
    OverlapDetail out;
    const Domain dom = overlap_domain(spec);
    out.dropped_filter_mass = filter.mass(-kInf, 0.0, omega_a);
    if (dom.empty) {
        out.converged = true;
        return out;
    }
    const double nu = filter.effective_rate();

    std::vector<double> cuts = spec.breakpoints();
    for (double m : {1.0, 4.0, 32.0, 256.0}) {
        cuts.push_back(omega_a - m * nu);
        cuts.push_back(omega_a + m * nu);
    }
    cuts.push_back(omega_a);

    quad::Options qopt;
    qopt.rel_tol = 0.5 * opt.rel_tol;
    qopt.max_panels = opt.max_panels;

    double value = 0.0, err = 0.0;
    if (std::isfinite(dom.hi)) {
        auto r = integrate_product(spec, filter, omega_a, dom.lo, dom.hi, cuts, qopt);
        value = r.value;
        err = r.error;
        out.evals = r.evals;
    } else {
        // finite head + algebraic tail mapped to (0,1]
        double head_hi = omega_a + 1024.0 * nu;
        for (double c : cuts) {
            if (std::isfinite(c)) head_hi = std::max(head_hi, 2.0 * std::fabs(c));
        }
        head_hi = std::max(head_hi, dom.lo + nu);
        auto head = integrate_product(spec, filter, omega_a, dom.lo, head_hi, cuts, qopt);
        quad::BatchFn f = [&spec, &filter, omega_a](const double* x, double* y, std::size_t n) {
            double g[15];
            spec.eval_batch(x, g, n);
            filter.eval_batch(x, y, n, omega_a);
            for (std::size_t i = 0; i < n; ++i) y[i] *= g[i];
        };
        quad::Options topt = qopt;
        topt.abs_tol = std::max(head.value * qopt.rel_tol * 0.5, 0.0);
        auto tail = quad::integrate_halfline(f, head_hi, head_hi, topt);
        value = head.value + tail.value;
        err = head.error + tail.error;
        out.evals = head.evals + tail.evals;
    }

    out.rate = 2.0 * M_PI * value;
    out.error = 2.0 * M_PI * err;
    out.converged = err <= std::max(opt.rel_tol * std::fabs(value), 1e-300);
    return out;
}

// sinc² filter: per-period panels around the center, early termination from
// spectral tail bounds, Euler–Maclaurin acceleration beyond kDirectPeriods.
constexpr int kCentralPeriods = 8;
constexpr long kDirectPeriods = 1024;

OverlapDetail overlap_projective(const ReservoirSpectrum& spec, const MeasurementFilter& filter,
                                 double omega_a, const OverlapOptions& opt) {
    OverlapDetail out;
    const Domain dom = overlap_domain(spec);
    out.dropped_filter_mass = filter.mass(-kInf, 0.0, omega_a);
    if (dom.empty) {
        out.converged = true;
        return out;
    }
    const double tau = 2.0 / filter.effective_rate();
    const double period = 2.0 * M_PI / tau;  // ω-width of one sinc² period

    quad::Options qopt;
    qopt.rel_tol = 0.25 * opt.rel_tol;
    qopt.max_panels = 4000;

    const std::vector<double> spec_cuts = spec.breakpoints();
    double value = 0.0, err = 0.0;

    // central lobes
    {
        const double clo = std::max(dom.lo, omega_a - kCentralPeriods * period);
        const double chi = std::min(dom.hi, omega_a + kCentralPeriods * period);
        if (chi > clo) {
            std::vector<double> cuts = spec_cuts;
            cuts.push_back(omega_a);
            for (int k = -kCentralPeriods; k <= kCentralPeriods; ++k) {
                cuts.push_back(omega_a + k * period);
            }
            auto r = integrate_product(spec, filter, omega_a, clo, chi, cuts, qopt);
            value += r.value;
            err += r.error;
            out.evals += r.evals;
        }
    }

    // per-period mass of sinc²/π beyond period k is bounded by 1/(π²k)
    const auto side_sweep = [&](int sign) {
        // nothing on this side?
        if (sign > 0 && dom.hi <= omega_a + kCentralPeriods * period) return;
        if (sign < 0 && dom.lo >= omega_a - kCentralPeriods * period) return;

        // distance (in periods) of a frequency from the filter center
        auto period_index = [&](double w) {
            return static_cast<long>(std::floor(std::fabs(w - omega_a) / period));
        };

        long k = kCentralPeriods;
        // skip straight to the support if it starts farther out
        if (sign > 0 && dom.lo > omega_a) k = std::max(k, period_index(dom.lo));
        if (sign < 0 && dom.hi < omega_a) k = std::max(k, period_index(dom.hi));

        while (true) {
            const double edge_near = omega_a + sign * k * period;
            const double edge_far = omega_a + sign * (k + 1) * period;
            const double plo = sign > 0 ? edge_near : edge_far;
            const double phi = sign > 0 ? edge_far : edge_near;
            if (sign > 0 && plo >= dom.hi) break;
            if (sign < 0 && phi <= dom.lo) break;

            // remaining-contribution bound: sup G beyond here × remaining filter mass
            const double supg =
                sign > 0 ? spec.sup_beyond(std::max(plo, dom.lo)) : spec.sup_before(std::min(phi, dom.hi));
            const double bound = supg / (M_PI * M_PI * static_cast<double>(k));
            if (bound < 0.25 * opt.rel_tol * std::fabs(value)) break;

            if (k >= kDirectPeriods) {
                // Euler–Maclaurin over the remaining full periods
                auto h = [&](double x) {
                    const double w = omega_a + sign * (2.0 * x + 1.0) * 0.5 * period;
                    const double inside =
                        (w >= dom.lo && w <= dom.hi) ? spec(w) : 0.0;
                    return inside / (2.0 * M_PI * M_PI * x * (x + 1.0));
                };
                quad::Options eopt;
                eopt.rel_tol = 0.1 * opt.rel_tol;
                double k_last = -1.0;
                double partial = 0.0;
                if (sign > 0 && std::isfinite(dom.hi)) {
                    k_last = std::floor((dom.hi - omega_a) / period) - 1.0;
                } else if (sign < 0) {
                    // domain floor at max(0, supp.lo) is always finite
                    k_last = std::floor((omega_a - dom.lo) / period) - 1.0;
                }
                double em = 0.0;
                if (k_last < 0.0) {
                    em = quad::euler_maclaurin_sum(h, static_cast<double>(k),
                                                   -1.0, static_cast<double>(k), eopt);
                } else if (k_last >= static_cast<double>(k)) {
                    em = quad::euler_maclaurin_sum(h, static_cast<double>(k), k_last,
                                                   static_cast<double>(k), eopt);
                    // trailing partial period
                    const double last_edge = omega_a + sign * (k_last + 1.0) * period;
                    const double pa = sign > 0 ? last_edge : dom.lo;
                    const double pb = sign > 0 ? dom.hi : last_edge;
                    if (pb > pa) {
                        auto r = integrate_product(spec, filter, omega_a, pa, pb, spec_cuts, qopt);
                        partial = r.value;
                        out.evals += r.evals;
                    }
                } else {
                    // fewer than one full period left: integrate directly
                    const double pa = sign > 0 ? plo : dom.lo;
                    const double pb = sign > 0 ? dom.hi : phi;
                    if (pb > pa) {
                        auto r = integrate_product(spec, filter, omega_a, pa, pb, spec_cuts, qopt);
                        partial = r.value;
                        out.evals += r.evals;
                    }
                }
                value += em + partial;
                err += 0.02 * std::fabs(em);  // heuristic: E–M remainder ≪ correction terms
                break;
            }

            const double pa = std::max(plo, dom.lo);
            const double pb = std::min(phi, dom.hi);
            if (pb > pa) {
                auto r = integrate_product(spec, filter, omega_a, pa, pb, spec_cuts, qopt);
                value += r.value;
                err += r.error;
                out.evals += r.evals;
            }
            ++k;
        }
    };

    side_sweep(+1);
    side_sweep(-1);

    out.rate = 2.0 * M_PI * value;
    out.error = 2.0 * M_PI * err;
    out.converged = err <= std::max(opt.rel_tol * std::fabs(value) * 2.0, 1e-300);
    return out;
}

} // namespace

OverlapDetail overlap_rate_detail(const ReservoirSpectrum& spec, const MeasurementFilter& filter,
                                  double omega_a, const OverlapOptions& opt) {
    if (!std::isfinite(omega_a)) throw InvalidParameter("overlap_rate: omega_a must be finite");
    return filter.is_projective() ? overlap_projective(spec, filter, omega_a, opt)
                                  : overlap_continuous(spec, filter, omega_a, opt);
}

double overlap_rate(const ReservoirSpectrum& spec, const MeasurementFilter& filter,
                    double omega_a, const OverlapOptions& opt) {
    const OverlapDetail d = overlap_rate_detail(spec, filter, omega_a, opt);
    if (!d.converged) {
        throw QuadratureFailure("overlap_rate: tolerance not reached (achieved " +
                                    std::to_string(d.error) + " absolute)",
                                d.error);
    }
    return d.rate;
}

double closed_form_powerlaw_rate(double amplitude, double exponent, double omega_c,
                                 double omega_a, double nu) {
    if (!(exponent > 0.0)) throw InvalidParameter("power-law rate: exponent must be positive");
    if (!(omega_a > 0.0) || !(omega_a < omega_c))
        throw InvalidParameter("power-law rate: need 0 < omega_a < omega_c");
    if (!(nu > 0.0)) throw InvalidParameter("power-law rate: nu must be positive");
    if (nu > omega_c / 10.0)
        throw OutOfRegime("power-law rate: nu must stay below omega_c/10");

    const double nearest_int = std::round(exponent);
    if (nearest_int >= 1.0 && std::fabs(exponent - nearest_int) < 1e-6) {
        // exact elementary form: J_n = ∫_0^W ω^n/((ω-ω_a)²+ν²) dω by recurrence
        const int n = static_cast<int>(nearest_int);
        const double W = omega_c;
        const double r2 = omega_a * omega_a + nu * nu;
        const double j0 =
            (std::atan((W - omega_a) / nu) + std::atan(omega_a / nu)) / nu;
        if (n == 0) return 2.0 * amplitude * nu * j0;
        const double j1 = 0.5 * std::log(((W - omega_a) * (W - omega_a) + nu * nu) / r2) +
                          omega_a * j0;
        double jm1 = j0, jm = j1;
        double wpow = 1.0;  // W^(n-1) built incrementally
        for (int m = 2; m <= n; ++m) {
            wpow *= W;
            const double jn = wpow / (m - 1.0) + 2.0 * omega_a * jm - r2 * jm1;
            jm1 = jm;
            jm = jn;
        }
        return 2.0 * amplitude * nu * jm;
    }

    if (omega_a > omega_c / 4.0)
        throw OutOfRegime("power-law rate: omega_a must stay below omega_c/4 for "
                          "non-integer exponents");

    // analytic continuation of the half-line integral minus the cutoff tail
    const double r = std::hypot(omega_a, nu);
    const double chi = std::atan2(nu, -omega_a);  // tan χ = -ν/ω_a, χ ∈ (π/2, π)
    const double main = 2.0 * M_PI * amplitude * std::pow(r, exponent) *
                        std::sin(exponent * chi) / std::sin(exponent * M_PI);

    // tail: 2A Σ_m Im[(ω_a + iν)^m] ω_C^(η-m) / (m-η), geometric in r/ω_C
    const std::complex<double> z(omega_a, nu);
    std::complex<double> zp = z;
    double tail = 0.0;
    double scale = std::fabs(main);
    for (int m = 1; m <= 80; ++m) {
        const double term = 2.0 * amplitude * zp.imag() *
                            std::pow(omega_c, exponent - m) / (m - exponent);
        tail += term;
        scale = std::max(scale, std::fabs(tail));
        if (std::fabs(term) < 1e-17 * scale && m > 3) break;
        zp *= z;
    }
    return main - tail;
}

double tail_prefactor(const ReservoirSpectrum& spec) {
    const auto* t = std::get_if<TailCutoff>(&spec.model());
    if (!t) throw Unsupported("tail prefactor is defined only for the slow-tail family");
    const double b = t->exponent;
    return std::pow(2.0, b) * M_PI / (std::cos(M_PI * b / 2.0) * std::tgamma(2.0 + b)) *
           t->amplitude;
}

double qze_asymptote(const ReservoirSpectrum& spec, double nu) {
    if (!(nu > 0.0)) throw InvalidParameter("qze_asymptote: nu must be positive");
    if (std::holds_alternative<Flat>(spec.model()))
        throw Unsupported("flat band: no QZE scaling exists");
    if (std::holds_alternative<TailCutoff>(spec.model())) {
        const auto& t = std::get<TailCutoff>(spec.model());
        return tail_prefactor(spec) * std::pow(nu, -t.exponent);
    }
    return 2.0 * spec.integrated_coupling() / nu;
}

double hydrogenic_aze_asymptote(double coupling, double corner, double nu) {
    if (!(coupling >= 0.0) || !(corner > 0.0) || !(nu > 0.0))
        throw InvalidParameter("hydrogenic asymptote: bad parameters");
    if (nu >= corner / 10.0)
        throw OutOfRegime("hydrogenic asymptote: valid only for nu << corner frequency");
    constexpr double c1 = 0.354;
    return coupling * nu * (std::log(corner / nu) + c1);
}

double genuine_qze_threshold(const ReservoirSpectrum& spec, double omega_a) {
    if (std::holds_alternative<Flat>(spec.model()))
        throw Unsupported("flat band: no genuine-QZE threshold exists");
    const double g = spec(omega_a);
    if (!(g > 0.0)) throw ZeroDensity("genuine_qze_threshold: G(omega_a) = 0");
    if (std::holds_alternative<TailCutoff>(spec.model())) {
        const auto& t = std::get<TailCutoff>(spec.model());
        return std::pow(tail_prefactor(spec) / (2.0 * M_PI * g), 1.0 / t.exponent);
    }
    return spec.integrated_coupling() / (M_PI * g);
}

namespace {

// max |G - G(ω_a)| over [ω_a-δ, ω_a+δ] ∩ support, sampled densely plus at
// spectral feature points
double max_deviation(const ReservoirSpectrum& spec, double omega_a, double delta,
                     const std::vector<double>& features) {
    const auto supp = spec.support();
    const double lo = std::max(omega_a - delta, supp.lo);
    const double hi = std::min(omega_a + delta, supp.hi);
    if (!(hi >= lo)) return 0.0;
    const double g0 = spec(omega_a);
    double dev = 0.0;
    constexpr int kSamples = 257;
    for (int i = 0; i < kSamples; ++i) {
        const double w = lo + (hi - lo) * static_cast<double>(i) / (kSamples - 1);
        dev = std::max(dev, std::fabs(spec(w) - g0));
    }
    for (double w : features) {
        if (w >= lo && w <= hi) dev = std::max(dev, std::fabs(spec(w) - g0));
    }
    return dev;
}

} // namespace

double delta_a_estimate(const ReservoirSpectrum& spec, double omega_a) {
    const double g0 = spec(omega_a);
    if (!(g0 > 0.0)) throw ZeroDensity("delta_a_estimate: G(omega_a) = 0");

    if (const auto* p = std::get_if<PowerLawCutoff>(&spec.model())) {
        if (p->exponent <= 1.0) return omega_a;
        return std::pow(omega_a, p->exponent) / std::pow(p->cutoff, p->exponent - 1.0);
    }
    if (const auto* f = std::get_if<Flat>(&spec.model())) {
        return 0.5 * std::min(omega_a - f->lo, f->hi - omega_a);
    }

    const auto supp = spec.support();
    const auto features = spec.breakpoints();
    const double span = std::max(std::isfinite(supp.hi) ? supp.hi - omega_a : 0.0,
                                 std::isfinite(supp.lo) ? omega_a - supp.lo : 0.0);
    const double scale = std::max(spec.spectral_scale(), std::fabs(omega_a));
    const double threshold = 0.5 * g0;

    double hi = std::max(scale, span) * 1e-9;
    double limit = std::max(4.0 * scale, 4.0 * span);
    if (!(limit > 0.0)) limit = 1.0;
    while (max_deviation(spec, omega_a, hi, features) <= threshold) {
        hi *= 2.0;
        if (hi > limit) return span > 0.0 ? span : limit;  // G never deviates enough
    }
    double lo = hi / 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (max_deviation(spec, omega_a, mid, features) > threshold) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

MeasurementFilter make_filter(FilterFamily family, double nu) {
    if (family == FilterFamily::projective) return MeasurementFilter(ProjectiveSinc{2.0 / nu});
    return MeasurementFilter(ContinuousLorentzian{nu});
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::golden_rule: return "GOLDEN_RULE";
        case Regime::aze: return "AZE";
        case Regime::qze_scaling: return "QZE_SCALING";
        case Regime::genuine_qze: return "GENUINE_QZE";
    }
    return "?";
}

namespace {

// golden-section maximum of R(ν) on [a,b] in log-ν
double refine_turnover(const ReservoirSpectrum& spec, FilterFamily family, double omega_a,
                       double a, double b, const OverlapOptions& opt) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(a), hi = std::log(b);
    auto eval = [&](double lx) {
        return overlap_rate_detail(spec, make_filter(family, std::exp(lx)), omega_a, opt).rate;
    };
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 40 && (hi - lo) > 1e-4; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
        }
    }
    return std::exp(0.5 * (lo + hi));
}

} // namespace

RateCurve rate_curve(const ReservoirSpectrum& spec, FilterFamily family, double omega_a,
                     const std::vector<double>& nu_grid, const OverlapOptions& opt,
                     unsigned threads) {
    if (nu_grid.empty()) throw InvalidParameter("rate_curve: empty nu grid");
    for (std::size_t i = 0; i < nu_grid.size(); ++i) {
        if (!(nu_grid[i] > 0.0)) throw InvalidParameter("rate_curve: nu must be positive");
        if (i > 0 && !(nu_grid[i] > nu_grid[i - 1]))
            throw InvalidParameter("rate_curve: nu grid must be sorted ascending");
    }

    RateCurve curve;
    curve.omega_a = omega_a;
    curve.family = family;
    curve.golden_rule = spec.golden_rule_rate(omega_a);
    try {
        curve.nu_qze = genuine_qze_threshold(spec, omega_a);
    } catch (const Error&) {
    }
    try {
        curve.delta_a = delta_a_estimate(spec, omega_a);
    } catch (const Error&) {
    }

    const std::size_t n = nu_grid.size();
    curve.samples.resize(n);

    // embarrassingly parallel over ν; each worker writes only its own slots
    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(n)));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            RateSample& s = curve.samples[i];
            s.nu = nu_grid[i];
            s.poisoned = false;
            s.dropped_filter_mass = 0.0;
            try {
                const auto d = overlap_rate_detail(spec, make_filter(family, s.nu), omega_a, opt);
                s.rate = d.rate;
                s.dropped_filter_mass = d.dropped_filter_mass;
                s.poisoned = !d.converged;
            } catch (const Error&) {
                s.rate = std::numeric_limits<double>::quiet_NaN();
                s.poisoned = true;
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // ν₁: interior grid argmax, refined by golden section
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (!curve.samples[i].poisoned && curve.samples[i].rate > curve.samples[imax].rate)
            imax = i;
    }
    if (n >= 3 && imax > 0 && imax + 1 < n && !curve.samples[imax].poisoned &&
        curve.samples[imax].rate > curve.samples.front().rate &&
        curve.samples[imax].rate > curve.samples.back().rate) {
        curve.nu_turnover = refine_turnover(spec, family, omega_a, nu_grid[imax - 1],
                                            nu_grid[imax + 1], opt);
    }

    // regime labels (fixed thresholds; precedence documented in the README)
    const double rgr = curve.golden_rule;
    for (std::size_t i = 0; i < n; ++i) {
        RateSample& s = curve.samples[i];
        if (s.poisoned) {
            s.regime = Regime::golden_rule;
            continue;
        }
        const double r = s.rate;
        const double prev = i > 0 ? curve.samples[i - 1].rate : r;
        const double next_r = i + 1 < n ? curve.samples[i + 1].rate : r;
        const bool decreasing = i > 0 ? r < prev : next_r < r;
        const bool in_gr_band = rgr > 0.0 && std::fabs(r / rgr - 1.0) < curve.gr_band;
        if (in_gr_band && curve.delta_a && s.nu < *curve.delta_a) {
            s.regime = Regime::golden_rule;
        } else if (rgr > 0.0 && r > rgr * (1.0 + curve.aze_band)) {
            s.regime = Regime::aze;
        } else if (decreasing && r < rgr) {
            s.regime = Regime::genuine_qze;
        } else if (decreasing) {
            s.regime = Regime::qze_scaling;
        } else if (in_gr_band) {
            s.regime = Regime::golden_rule;
        } else {
            s.regime = r >= rgr ? Regime::aze : Regime::qze_scaling;
        }
    }
    return curve;
}

} // namespace zenolab
