#include "zenolab/special.hpp"

#include <cmath>

namespace zenolab {

double sinc(double x) {
    if (std::fabs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

namespace {

// series: Si(x) = sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
// extended precision absorbs the cancellation, which grows to ~1e9 at x = 30
double si_series(double x) {
    const long double x2 = static_cast<long double>(x) * x;
    long double sum = 0.0;
    long double p = x; // x^(2k+1)/(2k+1)!
    for (int k = 0; k <= 80; ++k) {
        const long double m = 2.0L * k + 1.0L;
        sum += p / m;
        p *= -x2 / ((m + 1.0L) * (m + 2.0L));
        if (std::fabs(static_cast<double>(p)) < 1e-20 * std::fabs(static_cast<double>(sum)))
            break;
    }
    return static_cast<double>(sum);
}

// auxiliary asymptotics: Si(x) = pi/2 - f(x) cos x - g(x) sin x,
// f ~ (1/x) sum (-1)^k (2k)!/x^(2k), g ~ (1/x^2) sum (-1)^k (2k+1)!/x^(2k)
void si_aux(double x, double& f, double& g) {
    const double ix2 = 1.0 / (x * x);
    double prev = 1.0;
    double fsum = 0.0, gsum = 0.0;
    double c = 1.0; // (2k)! / x^(2k), alternating applied separately
    for (int k = 0; k < 18; ++k) {
        const double fterm = c;
        const double gterm = c * (2.0 * k + 1.0);
        if (k > 0 && fterm > prev) break; // divergent tail reached
        prev = fterm;
        fsum += (k % 2 == 0 ? fterm : -fterm);
        gsum += (k % 2 == 0 ? gterm : -gterm);
        c *= (2.0 * k + 1.0) * (2.0 * k + 2.0) * ix2;
    }
    f = fsum / x;
    g = gsum * ix2;
}

} // namespace

double sine_integral(double x) {
    const double ax = std::fabs(x);
    double si;
    if (ax <= 30.0) {
        si = si_series(ax);
    } else {
        double f, g;
        si_aux(ax, f, g);
        si = M_PI / 2.0 - f * std::cos(ax) - g * std::sin(ax);
    }
    return x < 0.0 ? -si : si;
}

double sinc_sq_integral(double a, double b) {
    auto anti = [](double x) {
        if (x > 1e150) return M_PI / 2.0;   // Si(inf) limit
        if (x < -1e150) return -M_PI / 2.0;
        if (std::fabs(x) < 1e-8) return x;  // ∫ sinc^2 ≈ x near 0
        const double s = std::sin(x);
        return sine_integral(2.0 * x) - s * s / x;
    };
    return anti(b) - anti(a);
}

} // namespace zenolab
