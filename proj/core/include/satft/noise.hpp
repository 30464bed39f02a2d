#ifndef SATFT_NOISE_HPP
#define SATFT_NOISE_HPP

#include <cstdint>

#include "satft/series.hpp"

namespace satft {

/// Power-law clock noise mix. Each amplitude is the Allan deviation the
/// process alone contributes at tau = 1 s (dimensionless fractional
/// frequency). All zero means an identically zero series.
///
/// For the phase-noise processes (white_pm, flicker_pm) the sigma_y(1 s)
/// anchoring is bandwidth-dependent; here it refers to data sampled at the
/// synthesis interval, with the measurement cutoff at the Nyquist frequency
/// 1/(2 dt). The flicker anchors are accurate for dt <= 1 s.
struct NoiseSpec {
    double white_pm = 0.0;
    double flicker_pm = 0.0;
    double white_fm = 0.0;
    double flicker_fm = 0.0;
    double random_walk_fm = 0.0;

    bool all_zero() const;
    void validate() const; // finite, >= 0
};

/// Deterministic synthesis of clock phase x(t): the five processes are
/// generated independently from sub-streams of `seed` and summed.
///
/// White FM and random-walk FM are exact cumulative sums of white noise.
/// The flicker processes are generated by fractional integration of white
/// noise (discrete filter h[0]=1, h[k]=h[k-1]*(beta/2+k-1)/k applied by FFT
/// convolution), which holds the theoretical Allan slope over the full
/// generated record, i.e. tau from dt up to about n*dt/4.
///
/// Identical (spec, n, dt, seed) give bit-identical output on a given
/// platform/standard library.
PhaseSeries synthesize_phase(const NoiseSpec& spec, std::size_t n, double dt,
                             std::uint64_t seed, Epoch start = Epoch{57800, 0.0});

/// out(t) = in(t) + offset + rate*t + drift*t^2/2, t in seconds from the
/// series start.
PhaseSeries add_deterministic(const PhaseSeries& series, double offset_s, double rate,
                              double drift_per_s);

namespace detail {
/// Fractional integration of order beta/2 (spectral shaping f^-beta),
/// exposed for tests. `w` is consumed.
std::vector<double> fractional_integrate(std::vector<double> w, double beta);
} // namespace detail

} // namespace satft

#endif
