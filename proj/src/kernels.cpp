#include "zenolab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace zenolab::kern {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void cplx_conv_dot_scalar(const double* kr, const double* ki,
                          const double* ar, const double* ai,
                          std::size_t n, double* out_re, double* out_im) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double xr = ar[n - 1 - j];
        const double xi = ai[n - 1 - j];
        re += kr[j] * xr - ki[j] * xi;
        im += kr[j] * xi + ki[j] * xr;
    }
    *out_re = re;
    *out_im = im;
}

void lorentzian_batch_scalar(const double* w, double* out, std::size_t n,
                             double center, double hwhm, double amp) {
    const double h2 = hwhm * hwhm;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = w[i] - center;
        out[i] = amp * hwhm / (d * d + h2);
    }
}

void hydrogenic_batch_scalar(const double* w, double* out, std::size_t n,
                             double amp, double scale) {
    const double inv2 = 1.0 / (scale * scale);
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] < 0.0) {
            out[i] = 0.0;
            continue;
        }
        const double q = 1.0 + w[i] * w[i] * inv2;
        const double q2 = q * q;
        out[i] = amp * w[i] / (q2 * q2);
    }
}

void rotate_absorb_scalar(double* ah, double* av,
                          const double* c, const double* s,
                          double theta, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double h = ah[i], v = av[i];
        ah[i] = c[i] * h - s[i] * v;
        av[i] = theta * (s[i] * h + c[i] * v);
    }
}

constexpr KernelOps scalar_table{
    "scalar",
    dot_scalar,
    cplx_conv_dot_scalar,
    lorentzian_batch_scalar,
    hydrogenic_batch_scalar,
    rotate_absorb_scalar,
};

const KernelOps* select() {
    if (const char* env = std::getenv("ZENOLAB_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_table;
        if (std::strcmp(env, "avx2") == 0 && avx2_ops()) return avx2_ops();
        // unknown value: fall through to auto-detect
    }
    if (const KernelOps* wide = avx2_ops()) return wide;
    return &scalar_table;
}

} // namespace

const KernelOps& scalar_ops() { return scalar_table; }

#if !defined(ZENOLAB_HAVE_AVX2_TU)
const KernelOps* avx2_ops() { return nullptr; }
#endif

const KernelOps& active() {
    static const KernelOps* chosen = select();
    return *chosen;
}

} // namespace zenolab::kern
