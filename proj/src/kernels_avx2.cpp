// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma; callers
// must check avx2_ops() != nullptr (runtime cpuid) before use.

#include "zenolab/kernels.hpp"

#include <immintrin.h>

namespace zenolab::kern {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void cplx_conv_dot_avx2(const double* kr, const double* ki,
                        const double* ar, const double* ai,
                        std::size_t n, double* out_re, double* out_im) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d k_re = _mm256_loadu_pd(kr + j);
        const __m256d k_im = _mm256_loadu_pd(ki + j);
        // a[n-1-j], a[n-2-j], ... : load ascending then reverse lanes
        __m256d a_re = _mm256_loadu_pd(ar + (n - 4 - j));
        __m256d a_im = _mm256_loadu_pd(ai + (n - 4 - j));
        a_re = _mm256_permute4x64_pd(a_re, _MM_SHUFFLE(0, 1, 2, 3));
        a_im = _mm256_permute4x64_pd(a_im, _MM_SHUFFLE(0, 1, 2, 3));
        acc_re = _mm256_fmadd_pd(k_re, a_re, acc_re);
        acc_re = _mm256_fnmadd_pd(k_im, a_im, acc_re);
        acc_im = _mm256_fmadd_pd(k_re, a_im, acc_im);
        acc_im = _mm256_fmadd_pd(k_im, a_re, acc_im);
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; j < n; ++j) {
        const double xr = ar[n - 1 - j];
        const double xi = ai[n - 1 - j];
        re += kr[j] * xr - ki[j] * xi;
        im += kr[j] * xi + ki[j] * xr;
    }
    *out_re = re;
    *out_im = im;
}

void lorentzian_batch_avx2(const double* w, double* out, std::size_t n,
                           double center, double hwhm, double amp) {
    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vh2 = _mm256_set1_pd(hwhm * hwhm);
    const __m256d vnum = _mm256_set1_pd(amp * hwhm);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(w + i), vc);
        const __m256d den = _mm256_fmadd_pd(d, d, vh2);
        _mm256_storeu_pd(out + i, _mm256_div_pd(vnum, den));
    }
    const double h2 = hwhm * hwhm;
    for (; i < n; ++i) {
        const double d = w[i] - center;
        out[i] = amp * hwhm / (d * d + h2);
    }
}

void hydrogenic_batch_avx2(const double* w, double* out, std::size_t n,
                           double amp, double scale) {
    const __m256d vinv2 = _mm256_set1_pd(1.0 / (scale * scale));
    const __m256d vone = _mm256_set1_pd(1.0);
    const __m256d vamp = _mm256_set1_pd(amp);
    const __m256d vzero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(w + i);
        const __m256d q = _mm256_fmadd_pd(_mm256_mul_pd(x, x), vinv2, vone);
        const __m256d q2 = _mm256_mul_pd(q, q);
        const __m256d q4 = _mm256_mul_pd(q2, q2);
        __m256d r = _mm256_div_pd(_mm256_mul_pd(vamp, x), q4);
        // zero out negative frequencies
        const __m256d mask = _mm256_cmp_pd(x, vzero, _CMP_GE_OQ);
        r = _mm256_and_pd(r, mask);
        _mm256_storeu_pd(out + i, r);
    }
    const double inv2 = 1.0 / (scale * scale);
    for (; i < n; ++i) {
        if (w[i] < 0.0) {
            out[i] = 0.0;
            continue;
        }
        const double q = 1.0 + w[i] * w[i] * inv2;
        const double q2 = q * q;
        out[i] = amp * w[i] / (q2 * q2);
    }
}

void rotate_absorb_avx2(double* ah, double* av,
                        const double* c, const double* s,
                        double theta, std::size_t n) {
    const __m256d vtheta = _mm256_set1_pd(theta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d h = _mm256_loadu_pd(ah + i);
        const __m256d v = _mm256_loadu_pd(av + i);
        const __m256d vc = _mm256_loadu_pd(c + i);
        const __m256d vs = _mm256_loadu_pd(s + i);
        const __m256d nh = _mm256_fmsub_pd(vc, h, _mm256_mul_pd(vs, v));
        const __m256d nv = _mm256_mul_pd(vtheta, _mm256_fmadd_pd(vs, h, _mm256_mul_pd(vc, v)));
        _mm256_storeu_pd(ah + i, nh);
        _mm256_storeu_pd(av + i, nv);
    }
    for (; i < n; ++i) {
        const double h = ah[i], v = av[i];
        ah[i] = c[i] * h - s[i] * v;
        av[i] = theta * (s[i] * h + c[i] * v);
    }
}

constexpr KernelOps avx2_table{
    "avx2",
    dot_avx2,
    cplx_conv_dot_avx2,
    lorentzian_batch_avx2,
    hydrogenic_batch_avx2,
    rotate_absorb_avx2,
};

bool cpu_has_avx2_fma() {
#if defined(__GNUC__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

} // namespace

const KernelOps* avx2_ops() {
    static const KernelOps* table = cpu_has_avx2_fma() ? &avx2_table : nullptr;
    return table;
}

} // namespace zenolab::kern
