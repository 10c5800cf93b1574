// special.hpp — small special-function helpers (sinc, sine integral)

#pragma once

namespace zenolab {

// sin(x)/x with the removable singularity filled in
double sinc(double x);

// Si(x) = ∫_0^x sin(u)/u du ; odd in x. Power series for |x| <= 16,
// asymptotic auxiliary-function expansion beyond (abs error < 1e-12 there).
double sine_integral(double x);

// ∫_a^b sinc^2(x) dx, via Si: antiderivative Si(2x) - sin^2(x)/x
double sinc_sq_integral(double a, double b);

} // namespace zenolab
