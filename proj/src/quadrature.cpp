#include "zenolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace zenolab::quad {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule (QUADPACK qk15 constants).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class T>
double vnorm(const T& v) {
    if constexpr (std::is_same_v<T, double>) return std::fabs(v);
    else return std::abs(v);
}

// One GK15 evaluation; error estimate follows the QUADPACK rescaling.
template <class T, class F>
void gk15(const F& f, double a, double b, T& value, double& err) {
    const double hl = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double x[15];
    T y[15];
    for (int i = 0; i < 7; ++i) {
        x[2 * i] = c - hl * xgk[i];
        x[2 * i + 1] = c + hl * xgk[i];
    }
    x[14] = c;
    f(x, y, 15);

    T res_g = wg[3] * y[14];
    T res_k = wgk[7] * y[14];
    double resabs = wgk[7] * vnorm(y[14]);
    for (int i = 0; i < 7; ++i) {
        const T sum = y[2 * i] + y[2 * i + 1];
        res_k += wgk[i] * sum;
        resabs += wgk[i] * (vnorm(y[2 * i]) + vnorm(y[2 * i + 1]));
        if (i % 2 == 1) res_g += wg[i / 2] * sum; // Gauss nodes are the odd xgk
    }
    const T mean = res_k * 0.5;
    double resasc = wgk[7] * vnorm(y[14] - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += wgk[i] * (vnorm(y[2 * i] - mean) + vnorm(y[2 * i + 1] - mean));
    }
    value = res_k * hl;
    resabs *= std::fabs(hl);
    resasc *= std::fabs(hl);
    err = vnorm(res_k - res_g) * std::fabs(hl);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
}

template <class T, class F>
Result<T> integrate_impl(const F& f,
                         const std::vector<std::pair<double, double>>& seeds,
                         const Options& opt) {
    struct Item {
        double a, b, err;
        T value;
        bool operator<(const Item& o) const { return err < o.err; }
    };

    Result<T> out;
    std::priority_queue<Item> heap;
    T total{};
    double total_err = 0.0;
    double span = 0.0;

    for (const auto& [a, b] : seeds) {
        if (!(b > a)) continue;
        span += b - a;
        T v;
        double e;
        gk15<T>(f, a, b, v, e);
        out.evals += 15;
        total += v;
        total_err += e;
        heap.push({a, b, e, v});
    }
    const double min_width = span * opt.min_width_factor;

    auto tol = [&]() { return std::max(opt.abs_tol, opt.rel_tol * vnorm(total)); };

    while (!heap.empty() && total_err > tol() && out.evals / 15 < opt.max_panels) {
        Item worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a < min_width || mid <= worst.a || mid >= worst.b) {
            // cannot split further; retire the panel (keep its contribution)
            continue;
        }
        T v1, v2;
        double e1, e2;
        gk15<T>(f, worst.a, mid, v1, e1);
        gk15<T>(f, mid, worst.b, v2, e2);
        out.evals += 30;
        total += (v1 + v2) - worst.value;
        total_err += (e1 + e2) - worst.err;
        heap.push({worst.a, mid, e1, v1});
        heap.push({mid, worst.b, e2, v2});
    }

    out.value = total;
    out.error = total_err;
    out.converged = total_err <= tol();
    return out;
}

} // namespace

Result<double> integrate(const BatchFn& f,
                         const std::vector<std::pair<double, double>>& seeds,
                         const Options& opt) {
    return integrate_impl<double>(f, seeds, opt);
}

Result<std::complex<double>> integrate(const BatchFnC& f,
                                       const std::vector<std::pair<double, double>>& seeds,
                                       const Options& opt) {
    return integrate_impl<std::complex<double>>(f, seeds, opt);
}

Result<double> integrate(const BatchFn& f, double a, double b, const Options& opt) {
    return integrate_impl<double>(f, {{a, b}}, opt);
}

Result<double> integrate_halfline(const BatchFn& f, double a, double scale,
                                  const Options& opt) {
    if (!(scale > 0.0)) scale = 1.0;
    // omega = a + scale*(1-u)/u, u in (0,1]; d omega = -scale/u^2 du
    BatchFn g = [&f, a, scale](const double* u, double* y, std::size_t n) {
        double w[15];
        double jac[15];
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = a + scale * (1.0 - u[i]) / u[i];
            jac[i] = scale / (u[i] * u[i]);
        }
        f(w, y, n);
        for (std::size_t i = 0; i < n; ++i) y[i] *= jac[i];
    };
    // geometric seed panels resolve the decades of the map
    std::vector<std::pair<double, double>> seeds;
    double hi = 1.0;
    for (int k = 0; k < 40; ++k) {
        const double lo = hi * 0.5;
        seeds.emplace_back(lo, hi);
        hi = lo;
    }
    seeds.emplace_back(0.0, hi);
    return integrate_impl<double>(g, seeds, opt);
}

std::vector<std::pair<double, double>> split_interval(double a, double b,
                                                      const std::vector<double>& cuts) {
    std::vector<double> pts{a, b};
    for (double c : cuts) {
        if (c > a && c < b) pts.push_back(c);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.emplace_back(pts[i], pts[i + 1]);
    return out;
}

double euler_maclaurin_sum(const std::function<double(double)>& h,
                           double k0, double k1, double scale,
                           const Options& opt) {
    BatchFn hb = [&h](const double* x, double* y, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) y[i] = h(x[i]);
    };
    double integral;
    if (k1 < 0.0) {
        integral = integrate_halfline(hb, k0, std::max(scale, k0), opt).value;
        const double hp0 = (h(k0 + 1.0) - h(std::max(k0 - 1.0, 0.5 * k0))) /
                           (k0 + 1.0 - std::max(k0 - 1.0, 0.5 * k0));
        return integral + 0.5 * h(k0) - hp0 / 12.0;
    }
    if (k1 < k0) return 0.0;
    if (k1 == k0) return h(k0);
    integral = integrate(hb, k0, k1, opt).value;
    // one-sided differences keep the derivative estimates inside [k0, k1]
    const double hp0 = h(k0 + 1.0) - h(k0);
    const double hp1 = h(k1) - h(k1 - 1.0);
    return integral + 0.5 * (h(k0) + h(k1)) + (hp1 - hp0) / 12.0;
}

} // namespace zenolab::quad
