#include "zenolab/polarization.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "zenolab/errors.hpp"
#include "zenolab/kernels.hpp"
#include "zenolab/quadrature.hpp"
#include "zenolab/rng.hpp"

namespace zenolab {

namespace {

void validate(const CavityConfig& c) {
    if (!(c.round_trip_time > 0.0))
        throw InvalidParameter("cavity: round_trip_time must be positive");
    if (!(c.transparency >= 0.0 && c.transparency <= 1.0))
        throw InvalidParameter("cavity: transparency must lie in [0,1]");
}

void validate(const NoiseModel& n) {
    if (n.mode == NoiseModel::Mode::gaussian_ar1) {
        if (!(std::fabs(n.correlation) < 1.0))
            throw InvalidParameter("noise: |correlation| must be < 1");
        if (!(n.rms >= 0.0)) throw InvalidParameter("noise: rms must be nonnegative");
    }
}

} // namespace

double measurement_rate(const CavityConfig& config) {
    validate(config);
    return 2.0 * (1.0 - config.transparency) /
           ((1.0 + config.transparency) * config.round_trip_time);
}

std::vector<double> sample_phase_jumps(const NoiseModel& noise, std::size_t n,
                                       std::uint64_t seed) {
    validate(noise);
    if (n < 1) throw InvalidParameter("sample_phase_jumps: n must be >= 1");
    std::vector<double> jumps(n);
    if (noise.mode == NoiseModel::Mode::constant) {
        std::fill(jumps.begin(), jumps.end(), noise.constant_jump);
        return jumps;
    }
    RngStream rng(seed);
    const double g = noise.correlation;
    const double innov = noise.rms * std::sqrt(1.0 - g * g);
    double x = noise.rms * rng.next_normal();  // stationary start
    jumps[0] = x;
    for (std::size_t k = 1; k < n; ++k) {
        x = g * x + innov * rng.next_normal();
        jumps[k] = x;
    }
    return jumps;
}

PolarizationState round_trip(const PolarizationState& state, double dphi, double theta) {
    const double c = std::cos(dphi);
    const double s = std::sin(dphi);
    PolarizationState out;
    out.a_h = c * state.a_h - s * state.a_v;
    out.a_v = theta * (s * state.a_h + c * state.a_v);
    return out;
}

namespace {

// Block partials keep the reduction order fixed; within a block shots
// accumulate in ascending order, so results do not depend on the block size
// or thread count. 512 shots keep the partial arrays small at 1e5-shot scale.
constexpr std::size_t kBlockShots = 512;

struct BlockResult {
    std::vector<double> sum;    // Σ_shots P_h(n) over the block, n = 1..n_trips
    std::vector<double> sumsq;  // Σ_shots P_h(n)²
};

// One block of shots marched together (structure-of-arrays across shots);
// the initial state (1,0) is real and rotation/absorption are real maps, so
// amplitudes stay real throughout.
void run_block(const CavityConfig& config, const NoiseModel& noise, std::size_t n_trips,
               std::uint64_t seed, std::size_t shot_begin, std::size_t count,
               BlockResult& out) {
    double ah[kBlockShots], av[kBlockShots];
    double cbuf[kBlockShots], sbuf[kBlockShots], dphi[kBlockShots];
    double ar1[kBlockShots];
    RngStream rng[kBlockShots];

    const double g = noise.correlation;
    const double innov =
        noise.mode == NoiseModel::Mode::gaussian_ar1 ? noise.rms * std::sqrt(1.0 - g * g) : 0.0;

    for (std::size_t s = 0; s < count; ++s) {
        ah[s] = 1.0;
        av[s] = 0.0;
        rng[s] = RngStream(seed, shot_begin + s);
        ar1[s] = noise.mode == NoiseModel::Mode::gaussian_ar1
                     ? noise.rms * rng[s].next_normal()
                     : noise.constant_jump;
    }

    const auto& ops = kern::active();
    const double theta = config.transparency;

    for (std::size_t n = 1; n <= n_trips; ++n) {
        if (noise.mode == NoiseModel::Mode::gaussian_ar1) {
            for (std::size_t s = 0; s < count; ++s) {
                dphi[s] = ar1[s];
                ar1[s] = g * ar1[s] + innov * rng[s].next_normal();
            }
        } else {
            for (std::size_t s = 0; s < count; ++s) dphi[s] = noise.constant_jump;
        }
        for (std::size_t s = 0; s < count; ++s) {
            cbuf[s] = std::cos(dphi[s]);
            sbuf[s] = std::sin(dphi[s]);
        }
        ops.rotate_absorb(ah, av, cbuf, sbuf, theta, count);

        double acc = 0.0, accsq = 0.0;
        for (std::size_t s = 0; s < count; ++s) {
            const double p = ah[s] * ah[s];
            acc += p;
            accsq += p * p;
        }
        out.sum[n - 1] += acc;
        out.sumsq[n - 1] += accsq;
    }
}

} // namespace

PolarizationSeries simulate_polarization(const CavityConfig& config, const NoiseModel& noise,
                                         std::size_t n_trips, std::size_t shots,
                                         std::uint64_t seed, unsigned threads) {
    validate(config);
    validate(noise);
    if (shots < 1) throw InvalidParameter("simulate_polarization: shots must be >= 1");

    const std::size_t n_blocks = (shots + kBlockShots - 1) / kBlockShots;
    std::vector<BlockResult> blocks(n_blocks);
    for (auto& b : blocks) {
        b.sum.assign(n_trips, 0.0);
        b.sumsq.assign(n_trips, 0.0);
    }

    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, static_cast<unsigned>(n_blocks)));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
            const std::size_t begin = b * kBlockShots;
            const std::size_t count = std::min(kBlockShots, shots - begin);
            run_block(config, noise, n_trips, seed, begin, count, blocks[b]);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // fixed block-index reduction keeps the result independent of scheduling
    PolarizationSeries series;
    series.shots = shots;
    series.mean_ph.assign(n_trips + 1, 1.0);
    series.stderr_ph.assign(n_trips + 1, 0.0);
    const double inv = 1.0 / static_cast<double>(shots);
    for (std::size_t n = 1; n <= n_trips; ++n) {
        double s = 0.0, sq = 0.0;
        for (const auto& b : blocks) {
            s += b.sum[n - 1];
            sq += b.sumsq[n - 1];
        }
        const double mean = s * inv;
        series.mean_ph[n] = mean;
        if (shots > 1) {
            const double var = std::max(0.0, (sq * inv - mean * mean)) *
                               static_cast<double>(shots) / static_cast<double>(shots - 1);
            series.stderr_ph[n] = std::sqrt(var * inv);
        }
    }
    return series;
}

double jump_spectrum(const NoiseModel& noise, double tau_r, double omega) {
    validate(noise);
    if (!(tau_r > 0.0)) throw InvalidParameter("jump_spectrum: tau_r must be positive");
    if (noise.mode != NoiseModel::Mode::gaussian_ar1)
        throw Unsupported("jump_spectrum: defined for the AR(1) noise model");
    if (std::fabs(omega) > M_PI / tau_r + 1e-12 * (1.0 / tau_r))
        throw OutOfBand("jump_spectrum: |omega| exceeds pi/tau_r");
    const double g = noise.correlation;
    const double b2 = noise.rms * noise.rms;
    const double denom = 1.0 + g * g - 2.0 * g * std::cos(omega * tau_r);
    return b2 / (2.0 * M_PI * tau_r) * (1.0 - g * g) / denom;
}

double band_overlap_rate(const CavityConfig& config, const NoiseModel& noise) {
    validate(config);
    validate(noise);
    const double tau_r = config.round_trip_time;
    const double band = M_PI / tau_r;
    const double nu = measurement_rate(config);

    if (noise.mode == NoiseModel::Mode::constant) {
        // fully correlated jumps: delta reservoir at ω = 0 with mass Δφ²/τ_r²,
        // so R = 2π · mass · F(0) = 2 · mass/ν — the deterministic recursion's
        // per-trip rate Δφ²(1+θ)/(1-θ)
        const double mass = noise.constant_jump * noise.constant_jump / (tau_r * tau_r);
        if (nu == 0.0) throw Unsupported("band_overlap_rate: theta = 1 has no decay");
        return 2.0 * mass / nu;
    }

    if (nu <= 0.0) {
        // θ = 1: the filter collapses onto a delta at ω = 0
        return 2.0 * M_PI * jump_spectrum(noise, tau_r, 0.0);
    }

    // Round-trip measurements are a discrete-time process: the broadening
    // profile lives on the band and its lag-k coherence is exactly θ^k (the
    // vertical amplitude survives each absorber pass with factor θ). That
    // fixes the filter to the band-periodic Lorentzian
    //   F(ω) = (τ/2π)(1-θ²) / (1+θ² - 2θ cos ωτ),
    // whose effective rate [πF(0)]⁻¹ is 2(1-θ)/[(1+θ)τ_r], which matches the
    // narrow Lorentzian of width (1-θ)/τ_r as θ → 1, and which flattens out
    // for perfect projections θ = 0. Unit band mass keeps a flat reservoir
    // exactly insensitive to θ.
    const double th = config.transparency;
    quad::Options opt;
    opt.rel_tol = 1e-8;
    quad::BatchFn f = [&](const double* x, double* y, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            const double filt = tau_r / (2.0 * M_PI) * (1.0 - th * th) /
                                (1.0 + th * th - 2.0 * th * std::cos(x[i] * tau_r));
            y[i] = jump_spectrum(noise, tau_r, x[i]) * filt;
        }
    };
    // seed panels at the filter width and the band-edge peaks of the AR(1) density
    std::vector<double> cuts{-nu, 0.0, nu};
    const double edge_width = (1.0 + std::fabs(noise.correlation)) / tau_r;
    cuts.push_back(-band + edge_width);
    cuts.push_back(band - edge_width);
    const auto r = quad::integrate(f, quad::split_interval(-band, band, cuts), opt);
    return 2.0 * M_PI * r.value;
}

} // namespace zenolab
