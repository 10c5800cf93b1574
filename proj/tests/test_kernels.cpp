// scalar reference vs AVX2 kernel equivalence, plus an extended-precision
// reference for the convolution dot product

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "zenolab/kernels.hpp"
#include "zenolab/rng.hpp"

using namespace zenolab;

namespace {

std::vector<double> random_vec(RngStream& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * (2.0 * rng.next_double() - 1.0);
    return v;
}

} // namespace

TEST_CASE("conv dot matches extended-precision reference") {
    RngStream rng(7);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 33u, 257u, 1000u}) {
        auto kr = random_vec(rng, n), ki = random_vec(rng, n);
        auto ar = random_vec(rng, n), ai = random_vec(rng, n);
        long double re = 0, im = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const long double xr = ar[n - 1 - j], xi = ai[n - 1 - j];
            re += kr[j] * xr - ki[j] * xi;
            im += kr[j] * xi + ki[j] * xr;
        }
        double gr, gi;
        kern::scalar_ops().cplx_conv_dot(kr.data(), ki.data(), ar.data(), ai.data(), n, &gr,
                                         &gi);
        CHECK(std::fabs(gr - static_cast<double>(re)) < 1e-12 * (1.0 + std::fabs(gr)));
        CHECK(std::fabs(gi - static_cast<double>(im)) < 1e-12 * (1.0 + std::fabs(gi)));
    }
}

TEST_CASE("scalar and AVX2 tables agree") {
    const auto* wide = kern::avx2_ops();
    if (!wide) return;  // machine without AVX2: nothing to compare
    const auto& ref = kern::scalar_ops();
    RngStream rng(11);

    for (std::size_t n : {1u, 3u, 4u, 6u, 16u, 63u, 64u, 255u, 1024u}) {
        auto a = random_vec(rng, n), b = random_vec(rng, n);
        CHECK(std::fabs(ref.dot(a.data(), b.data(), n) - wide->dot(a.data(), b.data(), n)) <
              1e-12 * (1.0 + std::fabs(ref.dot(a.data(), b.data(), n))));

        auto kr = random_vec(rng, n), ki = random_vec(rng, n);
        auto ar = random_vec(rng, n), ai = random_vec(rng, n);
        double r1, i1, r2, i2;
        ref.cplx_conv_dot(kr.data(), ki.data(), ar.data(), ai.data(), n, &r1, &i1);
        wide->cplx_conv_dot(kr.data(), ki.data(), ar.data(), ai.data(), n, &r2, &i2);
        CHECK(std::fabs(r1 - r2) < 1e-12 * (1.0 + std::fabs(r1)));
        CHECK(std::fabs(i1 - i2) < 1e-12 * (1.0 + std::fabs(i1)));

        auto w = random_vec(rng, n, 10.0);
        std::vector<double> o1(n), o2(n);
        ref.lorentzian_batch(w.data(), o1.data(), n, 0.7, 1.3, 2.0);
        wide->lorentzian_batch(w.data(), o2.data(), n, 0.7, 1.3, 2.0);
        for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-14));

        ref.hydrogenic_batch(w.data(), o1.data(), n, 0.5, 3.0);
        wide->hydrogenic_batch(w.data(), o2.data(), n, 0.5, 3.0);
        for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-14));

        auto ah1 = random_vec(rng, n), av1 = random_vec(rng, n);
        auto ah2 = ah1, av2 = av1;
        auto c = random_vec(rng, n), s = random_vec(rng, n);
        ref.rotate_absorb(ah1.data(), av1.data(), c.data(), s.data(), 0.4, n);
        wide->rotate_absorb(ah2.data(), av2.data(), c.data(), s.data(), 0.4, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ah1[i] == doctest::Approx(ah2[i]).epsilon(1e-14));
            CHECK(av1[i] == doctest::Approx(av2[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("hydrogenic batch zeroes negative frequencies") {
    const double w[4] = {-1.0, -1e-9, 0.0, 2.0};
    double out[4];
    kern::active().hydrogenic_batch(w, out, 4, 1.0, 1.0);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == doctest::Approx(2.0 / 625.0));
}
