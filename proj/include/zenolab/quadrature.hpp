// quadrature.hpp — adaptive Gauss–Kronrod integration with batched integrands
//
// The engine seeds a set of panels (callers inject breakpoints at spectral
// features), refines the worst panel globally until the pooled error estimate
// meets tolerance, and evaluates integrands 15 nodes at a time so batch
// kernels can be plugged in. Complex integrands run the same machinery.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace zenolab::quad {

struct Options {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    std::size_t max_panels = 40000;
    // hard floor on panel width relative to the seeded span (runaway guard)
    double min_width_factor = 1e-15;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0;       // pooled absolute error estimate
    std::size_t evals = 0;
    bool converged = false;
};

// Integrands are invoked in blocks of at most 15 nodes (one Kronrod panel),
// so fixed 15-slot scratch buffers are safe inside them.
using BatchFn = std::function<void(const double* x, double* y, std::size_t n)>;
using BatchFnC = std::function<void(const double* x, std::complex<double>* y, std::size_t n)>;

// integrate over the union of [a_i, b_i] seed panels
Result<double> integrate(const BatchFn& f,
                         const std::vector<std::pair<double, double>>& seeds,
                         const Options& opt);

Result<std::complex<double>> integrate(const BatchFnC& f,
                                       const std::vector<std::pair<double, double>>& seeds,
                                       const Options& opt);

// convenience: single interval
Result<double> integrate(const BatchFn& f, double a, double b, const Options& opt);

// ∫_a^∞ f, mapped to (0,1] via omega = a + scale*(1-u)/u. `scale` should be a
// characteristic decay length of f; the adaptive pass fixes the rest.
Result<double> integrate_halfline(const BatchFn& f, double a, double scale,
                                  const Options& opt);

// split [a,b] at the sorted interior points of `cuts` (values outside are ignored)
std::vector<std::pair<double, double>> split_interval(double a, double b,
                                                      const std::vector<double>& cuts);

// Σ_{k=k0}^{k1} h(k) for smooth slowly-varying h, via Euler–Maclaurin:
// ∫ h + endpoint halves + first derivative correction. k1 may be infinite
// (pass a negative value), in which case h must decay integrably; `scale`
// sets the tail substitution length. h is evaluated pointwise.
double euler_maclaurin_sum(const std::function<double(double)>& h,
                           double k0, double k1, double scale,
                           const Options& opt);

} // namespace zenolab::quad
