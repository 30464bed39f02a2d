#include "satft/noise.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <random>

#include "satft/errors.hpp"

namespace satft {

namespace {

// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex g_fftw_mutex;

std::vector<double> gaussian_block(std::uint64_t seed, std::uint32_t stream,
                                   std::size_t n) {
    std::seed_seq sseq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                       static_cast<std::uint32_t>(seed >> 32), stream};
    std::mt19937_64 rng(sseq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> w(n);
    for (double& v : w) v = gauss(rng);
    return w;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void add_scaled(std::vector<double>& acc, const std::vector<double>& v, double scale) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * v[i];
}

// Amplitude of the flicker-PM anchoring bracket; see header note on dt > 1 s.
double flicker_pm_bracket(double dt) {
    double b = 1.038 + 3.0 * std::log(M_PI / dt);
    return b > 1.0 ? b : 1.0;
}

} // namespace

bool NoiseSpec::all_zero() const {
    return white_pm == 0.0 && flicker_pm == 0.0 && white_fm == 0.0 && flicker_fm == 0.0 &&
           random_walk_fm == 0.0;
}

void NoiseSpec::validate() const {
    const double amps[] = {white_pm, flicker_pm, white_fm, flicker_fm, random_walk_fm};
    for (double a : amps) {
        if (!std::isfinite(a)) throw InvalidSpecError("NoiseSpec: non-finite amplitude");
        if (a < 0.0) throw InvalidSpecError("NoiseSpec: negative amplitude");
    }
}

namespace detail {

std::vector<double> fractional_integrate(std::vector<double> w, double beta) {
    const std::size_t n = w.size();
    const std::size_t m = next_pow2(2 * n);

    // Filter taps h[k] = h[k-1] * (beta/2 + k - 1) / k.
    std::vector<double> h(n);
    h[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k)
        h[k] = h[k - 1] * (0.5 * beta + static_cast<double>(k) - 1.0) / static_cast<double>(k);

    std::vector<double> a(m, 0.0), b(m, 0.0);
    std::copy(w.begin(), w.end(), a.begin());
    std::copy(h.begin(), h.end(), b.begin());

    const std::size_t nc = m / 2 + 1;
    std::vector<fftw_complex> fa(nc), fb(nc);

    fftw_plan pa, pb, pinv;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        pa = fftw_plan_dft_r2c_1d(static_cast<int>(m), a.data(), fa.data(), FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(static_cast<int>(m), b.data(), fb.data(), FFTW_ESTIMATE);
        pinv = fftw_plan_dft_c2r_1d(static_cast<int>(m), fa.data(), a.data(), FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < nc; ++i) {
        double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        fa[i][0] = re;
        fa[i][1] = im;
    }
    fftw_execute(pinv);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pinv);
    }

    const double norm = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) w[i] = a[i] * norm;
    return w;
}

} // namespace detail

PhaseSeries synthesize_phase(const NoiseSpec& spec, std::size_t n, double dt,
                             std::uint64_t seed, Epoch start) {
    spec.validate();
    if (n < 2) throw InvalidSpecError("synthesize_phase: need n >= 2");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidSpecError("synthesize_phase: dt must be positive");

    PhaseSeries out;
    out.start = start;
    out.dt = dt;
    out.x.assign(n, 0.0);
    if (spec.all_zero()) return out;

    // White PM: x iid. sigma_y(tau) = sqrt(3) * A / tau.
    if (spec.white_pm > 0.0) {
        auto w = gaussian_block(seed, 0, n);
        add_scaled(out.x, w, spec.white_pm / std::sqrt(3.0));
    }

    // Flicker PM: S_x ~ f^-1. One-sided S_y = h1*f with h1 = 4*pi*A^2;
    // sigma_y^2(1 s) = h1 * [1.038 + 3 ln(2 pi f_h)] / (4 pi^2), f_h = 1/(2 dt).
    if (spec.flicker_pm > 0.0) {
        auto w = detail::fractional_integrate(gaussian_block(seed, 1, n), 1.0);
        double amp = spec.flicker_pm * std::sqrt(M_PI / flicker_pm_bracket(dt));
        add_scaled(out.x, w, amp);
    }

    // White FM: x random walk with step B*g; sigma_y^2(tau) = B^2/(dt*tau).
    if (spec.white_fm > 0.0) {
        auto w = gaussian_block(seed, 2, n);
        double b = spec.white_fm * std::sqrt(dt);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += b * w[i];
            out.x[i] += acc;
        }
    }

    // Flicker FM: S_x ~ f^-3; sigma_y^2(tau) = 2 ln2 * h_-1 with
    // h_-1 = A^2/(pi dt^2).
    if (spec.flicker_fm > 0.0) {
        auto w = detail::fractional_integrate(gaussian_block(seed, 3, n), 3.0);
        double amp = spec.flicker_fm * dt * std::sqrt(M_PI / (2.0 * std::log(2.0)));
        add_scaled(out.x, w, amp);
    }

    // Random-walk FM: y random walk with step C*g, x = integral of y;
    // sigma_y^2(tau) -> C^2 * tau / (3 dt).
    if (spec.random_walk_fm > 0.0) {
        auto w = gaussian_block(seed, 4, n);
        double c = spec.random_walk_fm * std::sqrt(3.0 * dt);
        double y = 0.0, x = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y += c * w[i];
            x += y * dt;
            out.x[i] += x;
        }
    }

    return out;
}

PhaseSeries add_deterministic(const PhaseSeries& series, double offset_s, double rate,
                              double drift_per_s) {
    if (!std::isfinite(offset_s) || !std::isfinite(rate) || !std::isfinite(drift_per_s))
        throw InvalidSpecError("add_deterministic: non-finite parameter");
    series.validate();
    PhaseSeries out = series;
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        double t = static_cast<double>(i) * out.dt;
        out.x[i] += offset_s + rate * t + 0.5 * drift_per_s * t * t;
    }
    return out;
}

} // namespace satft
