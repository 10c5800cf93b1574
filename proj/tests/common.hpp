// shared test helpers: an independent brute-force integrator (kept separate
// from the library's adaptive engine so cross-checks stay two-route), plus a
// tiny least-squares line fit

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace testutil {

// composite Simpson on a uniform grid; n must be even
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t n = 4096) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        acc += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

// slope and intercept of y against x by ordinary least squares
inline std::pair<double, double> fit_line(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / d;
    const double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

} // namespace testutil
