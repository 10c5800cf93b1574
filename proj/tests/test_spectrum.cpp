// Reservoir spectrum families: point values, integrated coupling against a
// brute-force oracle, correlation functions against closed forms, and the
// family-wide invariants (nonnegativity, mass consistency, |Φ| <= C, scaling
// covariance).

#include <doctest.h>

#include <cmath>
#include <complex>

#include "common.hpp"
#include "zenolab/errors.hpp"
#include "zenolab/rng.hpp"
#include "zenolab/spectrum.hpp"

using namespace zenolab;
using testutil::rel_err;
using testutil::simpson;

TEST_CASE("point evaluations") {
    ReservoirSpectrum hyd{Hydrogenic{1.0, 1.0}};
    CHECK(hyd(0.0) == 0.0);
    CHECK(hyd(-3.0) == 0.0);
    CHECK(hyd(1.0) == doctest::Approx(0.0625).epsilon(1e-15));  // 1/2^4

    ReservoirSpectrum lor{Lorentzian{1.0, 5.0, 1.0}};
    CHECK(lor(5.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));

    ReservoirSpectrum pl{PowerLawCutoff{2.0, 1.5, 10.0}};
    CHECK(pl(4.0) == doctest::Approx(2.0 * std::pow(4.0, 1.5)).epsilon(1e-15));
    CHECK(pl(10.0) == 0.0);
    CHECK(pl(-1.0) == 0.0);

    ReservoirSpectrum tc{TailCutoff{1.0, 0.5, 3.0, +1, 0.5}};
    CHECK(tc(3.2) == 0.0);                                             // inside the cutoff
    CHECK(tc(4.0) == doctest::Approx(1.0).epsilon(1e-15));             // |4-3|^-0.5
    CHECK(tc(7.0) == doctest::Approx(0.5).epsilon(1e-15));             // 4^-0.5
    ReservoirSpectrum tcl{TailCutoff{1.0, 0.5, 3.0, -1, 0.5}};
    CHECK(tcl(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tcl(2.9) == 0.0);

    ReservoirSpectrum flat{Flat{2.0, -1.0, 1.0}};
    CHECK(flat(0.5) == 2.0);
    CHECK(flat(1.5) == 0.0);

    ReservoirSpectrum tab{Tabulated{{0.0, 1.0, 2.0}, {0.0, 2.0, 0.0}}};
    CHECK(tab(0.5) == doctest::Approx(1.0));
    CHECK(tab(1.5) == doctest::Approx(1.0));
    CHECK(tab(2.5) == 0.0);
}

TEST_CASE("constructor rejects invalid parameters") {
    CHECK_THROWS_AS((ReservoirSpectrum{Lorentzian{-1.0, 0.0, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS((ReservoirSpectrum{Lorentzian{1.0, 0.0, 0.0}}), InvalidParameter);
    CHECK_THROWS_AS((ReservoirSpectrum{TailCutoff{1.0, 1.5, 0.0, 1, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS((ReservoirSpectrum{TailCutoff{1.0, 0.5, 0.0, 2, 1.0}}), InvalidParameter);
    CHECK_THROWS_AS((ReservoirSpectrum{Tabulated{{0.0, 0.0}, {1.0, 1.0}}}), InvalidParameter);
    CHECK_THROWS_AS((ReservoirSpectrum{Tabulated{{0.0, 1.0}, {1.0, -1.0}}}), InvalidParameter);
}

TEST_CASE("integrated coupling: closed forms vs quadrature oracle") {
    ReservoirSpectrum lor{Lorentzian{2.5, 3.0, 0.7}};
    CHECK(lor.integrated_coupling() == 2.5);  // mass is the parameter

    ReservoirSpectrum hyd{Hydrogenic{0.3, 2.0}};
    const double c_hyd = 0.3 * 4.0 / 6.0;  // α ω_B²/6
    CHECK(hyd.integrated_coupling() == doctest::Approx(c_hyd).epsilon(1e-14));
    const double oracle =
        simpson([&](double w) { return hyd(w); }, 0.0, 200.0, 400000);
    CHECK(rel_err(hyd.integrated_coupling(), oracle) < 1e-6);

    ReservoirSpectrum pl{PowerLawCutoff{1.3, 0.7, 4.0}};
    const double c_pl = 1.3 * std::pow(4.0, 1.7) / 1.7;
    CHECK(pl.integrated_coupling() == doctest::Approx(c_pl).epsilon(1e-14));

    ReservoirSpectrum tc{TailCutoff{1.0, 0.5, 3.0, +1, 0.5}};
    CHECK_THROWS_AS(tc.integrated_coupling(), Divergent);
    CHECK_THROWS_AS(tc.zeno_time(), Divergent);
}

TEST_CASE("golden rule rate") {
    ReservoirSpectrum flat{Flat{1.0, 0.0, 10.0}};
    CHECK(golden_rule_rate(flat, 5.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));

    // hydrogenic, ω_a << ω_B: R_GR ≈ 2π α ω_a
    ReservoirSpectrum hyd{Hydrogenic{0.1, 1000.0}};
    CHECK(rel_err(golden_rule_rate(hyd, 1.0), 2.0 * M_PI * 0.1 * 1.0) < 1e-5);

    // Lorentzian at the peak: 2π·C/(πΓ) = 2C/Γ
    ReservoirSpectrum lor{Lorentzian{3.0, 7.0, 0.5}};
    CHECK(golden_rule_rate(lor, 7.0) == doctest::Approx(2.0 * 3.0 / 0.5).epsilon(1e-14));
}

TEST_CASE("correlation function closed forms and quadrature oracle") {
    // Φ(0) = C for every finite-mass family
    for (const auto& spec :
         {ReservoirSpectrum{Lorentzian{2.0, 1.0, 0.5}}, ReservoirSpectrum{Flat{1.0, -2.0, 3.0}},
          ReservoirSpectrum{Hydrogenic{0.2, 3.0}},
          ReservoirSpectrum{PowerLawCutoff{1.0, 2.0, 2.0}}}) {
        CHECK(rel_err(correlation_function(spec, 0.0).real(), spec.integrated_coupling()) <
              1e-6);
        CHECK(std::fabs(correlation_function(spec, 0.0).imag()) <
              1e-6 * spec.integrated_coupling());
    }

    // Lorentzian: C e^{-(Γ+iω_M)t}; centered case decays as e^{-Γt}
    ReservoirSpectrum lor{Lorentzian{1.0, 0.0, 2.0}};
    CHECK(correlation_function(lor, 1.0).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(std::fabs(correlation_function(lor, 1.0).imag()) < 1e-12);

    // Flat band [-W, W]: Φ(t) = 2 G0 sin(Wt)/t
    ReservoirSpectrum flat{Flat{1.5, -2.0, 2.0}};
    for (double t : {0.1, 0.9, 4.0}) {
        CHECK(rel_err(correlation_function(flat, t).real(), 1.5 * 2.0 * std::sin(2.0 * t) / t) <
              1e-12);
    }

    // numeric path vs brute-force complex quadrature (hydrogenic)
    ReservoirSpectrum hyd{Hydrogenic{0.5, 2.0}};
    for (double t : {0.3, 1.7}) {
        const double re =
            simpson([&](double w) { return hyd(w) * std::cos(w * t); }, 0.0, 120.0, 300000);
        const double im =
            simpson([&](double w) { return -hyd(w) * std::sin(w * t); }, 0.0, 120.0, 300000);
        const auto phi = correlation_function(hyd, t);
        CHECK(std::abs(phi - std::complex<double>(re, im)) < 2e-6 * hyd.integrated_coupling());
    }

    ReservoirSpectrum tc{TailCutoff{1.0, 0.5, 3.0, +1, 0.5}};
    CHECK_THROWS_AS(correlation_function(tc, 1.0), Divergent);
}

TEST_CASE("zeno time") {
    CHECK(zeno_time(ReservoirSpectrum{Lorentzian{4.0, 0.0, 1.0}}) == doctest::Approx(0.5));
    CHECK(zeno_time(ReservoirSpectrum{Flat{1.0, 0.0, 1.0}}) == doctest::Approx(1.0));
    CHECK(zeno_time(ReservoirSpectrum{Hydrogenic{0.01, 100.0}}) ==
          doctest::Approx(1.0 / std::sqrt(0.01 * 1e4 / 6.0)).epsilon(1e-12));
}

namespace {

ReservoirSpectrum random_finite_spectrum(RngStream& rng, int which) {
    const double a = 0.2 + rng.next_double();
    const double b = 0.5 + 2.0 * rng.next_double();
    switch (which % 4) {
        case 0: return ReservoirSpectrum{Lorentzian{a, 5.0 * rng.next_double(), b}};
        case 1: return ReservoirSpectrum{PowerLawCutoff{a, 0.3 + 2.0 * rng.next_double(), 3.0 * b}};
        case 2: return ReservoirSpectrum{Hydrogenic{a, 4.0 * b}};
        default: return ReservoirSpectrum{Flat{a, -b, 2.0 * b}};
    }
}

} // namespace

TEST_CASE("invariant: nonnegativity on dense samples") {
    RngStream rng(3);
    for (int trial = 0; trial < 24; ++trial) {
        const auto spec = random_finite_spectrum(rng, trial);
        const auto supp = spec.support();
        const double lo = std::isfinite(supp.lo) ? supp.lo - 1.0 : -50.0;
        const double hi = std::isfinite(supp.hi) ? supp.hi + 1.0 : 50.0;
        for (int i = 0; i <= 500; ++i) {
            const double w = lo + (hi - lo) * i / 500.0;
            CHECK(spec(w) >= 0.0);
        }
    }
}

TEST_CASE("invariant: quadrature mass equals integrated coupling") {
    RngStream rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        const auto spec = random_finite_spectrum(rng, trial);
        const auto supp = spec.support();
        const double lo = std::isfinite(supp.lo) ? supp.lo : -400.0;
        const double hi = std::isfinite(supp.hi) ? supp.hi : 400.0;
        const double mass = simpson([&](double w) { return spec(w); }, lo, hi, 400000);
        // analytic wing mass outside the quadrature window
        double tail = 0.0;
        if (const auto* l = std::get_if<Lorentzian>(&spec.model())) {
            tail = l->mass - l->mass / M_PI *
                                 (std::atan((hi - l->center) / l->half_width) +
                                  std::atan((l->center - lo) / l->half_width));
        } else if (const auto* h = std::get_if<Hydrogenic>(&spec.model())) {
            const double x2 = (hi / h->corner) * (hi / h->corner);
            tail = h->coupling * h->corner * h->corner / 6.0 / ((1.0 + x2) * (1.0 + x2) * (1.0 + x2));
        }
        CHECK(rel_err(mass + tail, spec.integrated_coupling()) < 1e-5);
    }
}

TEST_CASE("invariant: |Phi(t)| <= Phi(0) = C") {
    RngStream rng(9);
    for (int trial = 0; trial < 8; ++trial) {
        const auto spec = random_finite_spectrum(rng, trial);
        const double c = spec.integrated_coupling();
        for (double t : {0.0, 0.05, 0.3, 1.0, 4.0}) {
            CHECK(std::abs(spec.correlation(t)) <= c * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("invariant: scaling covariance of mass and golden rule") {
    // G'(ω) = k G(kω): same integrated coupling; R'_GR(ω_a/k) = k R_GR(ω_a)
    const double k = 2.7;
    struct Pair {
        ReservoirSpectrum orig, scaled;
    };
    const Pair pairs[] = {
        {ReservoirSpectrum{Lorentzian{1.4, 2.0, 0.6}},
         ReservoirSpectrum{Lorentzian{1.4, 2.0 / k, 0.6 / k}}},
        // k·A(kω)^η on (0, ω_C/k) has amplitude k^{1+η} A
        {ReservoirSpectrum{PowerLawCutoff{0.8, 1.5, 5.0}},
         ReservoirSpectrum{PowerLawCutoff{0.8 * std::pow(k, 2.5), 1.5, 5.0 / k}}},
        {ReservoirSpectrum{Flat{0.9, 1.0, 3.0}},
         ReservoirSpectrum{Flat{0.9 * k, 1.0 / k, 3.0 / k}}},
    };
    for (const auto& p : pairs) {
        CHECK(rel_err(p.scaled.integrated_coupling(), p.orig.integrated_coupling()) < 1e-12);
        const double wa = 1.9;
        CHECK(rel_err(p.scaled.golden_rule_rate(wa / k), k * p.orig.golden_rule_rate(wa)) <
              1e-12);
    }
}
