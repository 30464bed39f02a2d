#ifndef SATFT_TWCP_HPP
#define SATFT_TWCP_HPP

#include <utility>
#include <vector>

#include "satft/linksim.hpp"
#include "satft/series.hpp"

namespace satft {

/// Time-tagged vertical TEC over one station (TECU), linearly interpolated
/// in time. Must cover the span it is asked about.
struct TecSeries {
    std::vector<Epoch> epochs; // strictly increasing
    std::vector<double> tecu;

    double at(const Epoch& e) const; // throws CoverageError outside the span
    void validate() const;

    static TecSeries constant(double tecu, const Epoch& from, const Epoch& to);
    /// Sampled from a gridded map at fixed coordinates.
    static TecSeries from_map(const TECMap& map, double lat_deg, double lon_deg,
                              const std::vector<Epoch>& at);
};

/// Four-carrier-phase cancellation:
///
///   dt(t) = [ (L_AB - L_BB) - (L_BA - L_AA) ] / (2 f_up)
///
/// The same-station differences remove the transponder phase and the common
/// downlink path; the cross difference removes the remaining uplink terms to
/// first order. The absolute level is arbitrary (carrier ambiguities are
/// never fixed); epoch-to-epoch differences are calibrated. A gap in the
/// input epochs starts a new output segment, never interpolation.
TimeDiffSeries combine(const FourPhaseSet& phases);

/// Removes the residual two-way dispersive term. Per station,
///
///   corr_i = 40.308/(2c) * STEC_i * (1/f_down^2 - 1/f_up^2),
///
/// with STEC = VTEC * slant factor; the A and B terms enter the clock
/// difference with opposite signs (A positive). Applying the correction
/// twice with the TEC sign flipped restores the input.
TimeDiffSeries iono_correct(const TimeDiffSeries& diff, const TecSeries& tec_a,
                            const TecSeries& tec_b, const StationConfig& station_a,
                            const StationConfig& station_b, const CarrierPlan& plan);

struct ExcursionEvent {
    Epoch epoch;
    double step_s;
};

/// Rolling-median step detector: flags epochs where the median of the
/// following `window` samples differs from the median of the preceding
/// `window` samples by more than `threshold`. Clean data yields no events.
std::vector<ExcursionEvent> detect_excursions(const TimeDiffSeries& diff, double threshold_s,
                                              std::size_t window);

} // namespace satft

#endif
