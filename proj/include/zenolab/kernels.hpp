// kernels.hpp — data-parallel inner-loop kernels, runtime-dispatched
//
// Every kernel has a scalar reference implementation and (on x86-64) an AVX2
// variant compiled in its own TU; the active table is chosen once per process
// from cpuid, overridable with ZENOLAB_KERNEL=scalar|avx2. The two variants
// are equivalence-tested against each other.

#pragma once

#include <cstddef>

namespace zenolab::kern {

struct KernelOps {
    const char* name;

    // plain dot product (quadrature weighted sums)
    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_{j=0}^{n-1} (kr[j] + i*ki[j]) * (ar[n-1-j] + i*ai[n-1-j])
    // — the discrete memory-kernel convolution of the Volterra recurrence,
    //   second factor traversed in reverse.
    void (*cplx_conv_dot)(const double* kr, const double* ki,
                          const double* ar, const double* ai,
                          std::size_t n, double* out_re, double* out_im);

    // out[i] = amp * hwhm / ((w[i]-center)^2 + hwhm^2)
    void (*lorentzian_batch)(const double* w, double* out, std::size_t n,
                             double center, double hwhm, double amp);

    // out[i] = amp * w[i] / (1 + (w[i]/scale)^2)^4 for w >= 0, else 0
    void (*hydrogenic_batch)(const double* w, double* out, std::size_t n,
                             double amp, double scale);

    // polarization round trip over a block of real-amplitude states:
    // ah' = c*ah - s*av ; av' = theta*(s*ah + c*av)
    void (*rotate_absorb)(double* ah, double* av,
                          const double* c, const double* s,
                          double theta, std::size_t n);
};

const KernelOps& scalar_ops();

// nullptr when the build lacks the AVX2 TU or the CPU lacks AVX2+FMA
const KernelOps* avx2_ops();

// selected once per process (cpuid + ZENOLAB_KERNEL override)
const KernelOps& active();

} // namespace zenolab::kern
