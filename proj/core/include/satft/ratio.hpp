#ifndef SATFT_RATIO_HPP
#define SATFT_RATIO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "satft/decimal.hpp"
#include "satft/series.hpp"
#include "satft/stats.hpp"

namespace satft {

/// Reference optical transition frequencies as exact decimal strings (Hz).
/// Shipped defaults are the commonly adopted reference values; both are
/// configuration inputs and meant to be replaced by the user's adopted
/// values.
struct RatioRefs {
    std::string f_yb_hz = "518295836590863.6";
    std::string f_sr_hz = "429228004229873.0";
};

/// The three simultaneous 1 s measurement streams, stored as offsets from 1
/// (fractional frequencies). With f_ma the maser at the Sr site and f_utc
/// the UTC(k) realization at the Yb site:
///   local_sr: (f_Sr/fbar_Sr)/f_ma - 1    measured at the Sr site
///   local_yb: (f_Yb/fbar_Yb)/f_utc - 1   measured at the Yb site
///   link:     f_ma/f_utc - 1             measured over the satellite link
struct SessionInputs {
    TimeDiffSeries local_sr;
    TimeDiffSeries local_yb;
    TimeDiffSeries link;
    RatioRefs refs;

    void validate() const;
};

/// The three streams averaged into common bins; identical epoch grids, one
/// entry per surviving bin.
struct AlignedBins {
    double bin_s = 30.0;
    std::vector<Epoch> epochs;
    std::vector<double> local_sr, local_yb, link;
    std::vector<int> seconds_used; // valid common seconds inside each bin

    std::size_t size() const { return epochs.size(); }
};

/// Bins only the epochs where all three streams have data; a bin survives
/// when at least min_occupancy_s common seconds fall inside it. Throws
/// CoverageError when nothing overlaps.
AlignedBins align_and_average(const SessionInputs& inputs, double bin_s = 30.0,
                              double min_occupancy_s = 15.0);

/// Per-bin y_Yb/y_Sr - 1 following the measurement chain
///   (yYb/ySr) = [local_yb factor] / ([local_sr factor] * [link factor]),
/// evaluated as offsets so no precision is lost near 1. The reference-ratio
/// factor fbar_Yb/fbar_Sr stays out until final_ratio.
TimeDiffSeries combine_ratio(const AlignedBins& bins);

struct DailyStat {
    std::string label;   // calendar date of the session start
    Epoch start;
    double mean = 0.0;   // of y_Yb/y_Sr - 1
    double sigma = 0.0;  // sample standard deviation
    bool has_sigma = false; // false for single-point days
    std::size_t count = 0;  // 30-s points
    double period_s = 0.0;  // count * bin
    double statistical_uncertainty = 0.0; // filled from the stability fit
};

/// Splits the binned ratio series into measurement sessions ("days" in the
/// local sense: a new session after a gap longer than day_gap_s) and
/// computes per-day statistics.
std::vector<DailyStat> daily_stats(const TimeDiffSeries& ratio_series, double bin_s,
                                   double day_gap_s = 7200.0);

struct WeightedMean {
    double value = 0.0;
    bool equal_weight_fallback = false; // set when no day had a usable sigma
};

/// Weighted mean of the daily means with weights N_i / sigma_i^2.
WeightedMean weighted_mean(const std::vector<DailyStat>& dailies);

/// Statistical uncertainty of one day of length `period_s`, read off the
/// stability fit: a * period^b.
double daily_statistical_uncertainty(const PowerLawFit& fit, double period_s);

/// Total statistical uncertainty of k days: sqrt(sum(u_i^2) / k) / sqrt(k).
double total_statistical(const std::vector<double>& daily_uncertainties);

struct UncertaintyBudget {
    double statistical = 0.0;
    double sr_systematic = 0.0;
    double yb_systematic = 0.0;
    double gravitational_redshift = 0.0;
    double link_systematic = 0.0;

    std::vector<double> components() const;
    void validate() const; // all >= 0
};

/// Root sum of squares of the budget components.
double budget_total(const UncertaintyBudget& budget);

struct RatioResult {
    double weighted_offset = 0.0;    // weighted mean of y_Yb/y_Sr - 1
    double total_uncertainty = 0.0;  // dimensionless
    FormattedRatio ratio;            // exact-decimal final ratio
};

/// R = (fbar_Yb/fbar_Sr) * (1 + delta) in exact decimal arithmetic.
RatioResult final_ratio(double delta, double total_uncertainty, const RatioRefs& refs);

// ---- whole-session driver ---------------------------------------------------

struct SessionOptions {
    double bin_s = 30.0;
    double min_occupancy_s = 15.0;
    double day_gap_s = 7200.0;
    /// Stability-model override (amplitude, exponent); fitted from the
    /// lumped ratio data when absent.
    std::optional<PowerLawFit> fit_override;
    double sr_systematic = 0.5e-16;
    double yb_systematic = 1.2e-16;
    double gravitational_redshift = 0.4e-16;
    double link_systematic = 1.0e-16;
};

struct SessionResult {
    AlignedBins bins;
    TimeDiffSeries ratio_series;
    StabilityCurve adev;
    PowerLawFit fit;
    std::vector<DailyStat> dailies;
    WeightedMean weighted;
    UncertaintyBudget budget;
    double budget_total_value = 0.0;
    RatioResult result;
};

/// Runs the full chain: align/average, per-bin ratio, lumped Allan
/// deviation and power-law fit, daily statistics, weighted mean,
/// uncertainty budget, exact final ratio.
SessionResult run_ratio_session(const SessionInputs& inputs, const SessionOptions& options = {});

/// Report files. The key-value report carries all uncertainties in 1e-16
/// units; the two CSVs mirror the daily-statistics and budget tables.
void write_ratio_report(std::ostream& out, const SessionResult& r);
void write_daily_table_csv(std::ostream& out, const SessionResult& r);
void write_budget_table_csv(std::ostream& out, const SessionResult& r);

/// Integrates fractional-frequency samples into phase (seconds) so the
/// phase-based deviation estimators apply; x[0] = 0 per segment.
TimeDiffSeries phase_from_frequency(const TimeDiffSeries& freq);

} // namespace satft

#endif
