#ifndef SATFT_STATS_HPP
#define SATFT_STATS_HPP

#include <filesystem>
#include <iosfwd>
#include <utility>

#include "satft/allan.hpp"
#include "satft/series.hpp"

namespace satft {

/// sigma_y(tau) = amplitude * tau^exponent over [tau_min, tau_max].
struct PowerLawFit {
    double amplitude = 0.0;
    double exponent = 0.0;
    double tau_min_s = 0.0;
    double tau_max_s = 0.0;

    double evaluate(double tau_s) const;
    /// tau at which the curve crosses `level` (exponent != 0).
    double solve_for_level(double level) const;
    void validate() const; // amplitude > 0, exponent in (-2, 1)
};

struct DeviationResult {
    StabilityCurve curve;
    /// Requested taus that could not be evaluated, with the reason.
    std::vector<std::pair<double, std::string>> rejected;
};

/// Overlapping ADEV/MDEV of a clock-difference series at the requested
/// averaging times. Gaps split the data; per-tau statistics are pooled over
/// segments (never interpolated across a gap). A tau must be an integer
/// multiple of the sample interval and short enough for the record.
DeviationResult deviation(const TimeDiffSeries& series, Estimator estimator,
                          const std::vector<double>& taus);

/// a - b on their common epoch grid. If the rates differ by an integer
/// factor the faster series is boxcar-averaged onto the slower grid first
/// (window centred on the slow sample). Only epochs present in both survive.
TimeDiffSeries double_difference(const TimeDiffSeries& a, const TimeDiffSeries& b);

/// Subtracts a centred moving average of length ma_window, drops the
/// half-window edges, then block-averages the remainder into avg_bin bins
/// (bin epochs at bin centres). Applied per segment.
TimeDiffSeries detrend(const TimeDiffSeries& series, double ma_window_s, double avg_bin_s);

/// Least-squares slope of clock difference vs time: the fractional
/// frequency disagreement between the two techniques in a double
/// difference (s/s, dimensionless).
double fit_gradient(const TimeDiffSeries& dd);

/// Least squares in log-log space over points with tau in [tau_min, tau_max].
PowerLawFit fit_powerlaw(const StabilityCurve& curve, double tau_min_s, double tau_max_s);

/// Stability curve CSV: header "tau_s,sigma,estimator,edf".
void write_stability_csv(std::ostream& out, const StabilityCurve& curve);
void write_stability_csv(const std::filesystem::path& path, const StabilityCurve& curve);

} // namespace satft

#endif
