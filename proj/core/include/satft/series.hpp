#ifndef SATFT_SERIES_HPP
#define SATFT_SERIES_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "satft/epoch.hpp"

namespace satft {

/// Uniformly sampled clock time offset x(t) in seconds against an ideal
/// timescale. Gap-free; gaps only appear downstream in TimeDiffSeries.
struct PhaseSeries {
    Epoch start;
    double dt = 1.0; // s
    std::vector<double> x; // s

    std::size_t size() const { return x.size(); }
    Epoch epoch_at(std::size_t i) const { return start.advanced(static_cast<double>(i) * dt); }

    /// Linear interpolation of x at `t` seconds from the series start.
    /// The first/last interval is extended linearly for |t| slightly
    /// outside the span (needed when evaluating at signal transmit epochs
    /// a fraction of a second before the first sample).
    double sample_at(double t) const;

    void validate() const; // dt > 0, n >= 1, finite values
};

enum class Technique { raw, twcp, ppp, ippp, double_diff };

std::string technique_name(Technique t);
Technique technique_from_name(std::string_view name);

/// One gap-free run of uniformly sampled clock differences.
struct Segment {
    Epoch start;
    std::vector<double> values; // s
};

/// Clock difference x_A - x_B (seconds) on a uniform grid, split into
/// segments wherever the measurement was interrupted. Most series have a
/// single segment; operations never interpolate across segment boundaries.
struct TimeDiffSeries {
    double dt = 1.0;
    Technique technique = Technique::raw;
    bool iono_corrected = false;
    std::vector<Segment> segments;

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    Epoch first_epoch() const;
    Epoch last_epoch() const;
    double span_seconds() const; // first to last sample

    /// Seconds from the first sample of the series to sample i of segment s.
    double rel_time(std::size_t seg, std::size_t i) const;

    /// Append one sample; starts a new segment when the epoch is not one
    /// step after the previous sample. Epochs must be strictly increasing.
    void append(const Epoch& e, double value);

    /// Single-segment convenience constructor.
    static TimeDiffSeries uniform(Epoch start, double dt, std::vector<double> values,
                                  Technique technique);

    /// All values concatenated (analysis across segments must use
    /// rel_time / segment boundaries, this is for whole-series reductions).
    std::vector<double> flattened() const;

    void validate() const;
};

// ---- CSV interfaces -------------------------------------------------------
//
// PhaseSeries:   header "mjd,sod,x_seconds"
// TimeDiffSeries: header "mjd,sod,dt_seconds,technique,flags"
//                 flags column: 'I' if the ionosphere correction was applied,
//                 '-' otherwise.
// Session streams (fractional frequency offsets): header "mjd,sod,value",
//                 carried in a TimeDiffSeries with technique "raw".
//
// All values are written with 17 significant digits.

void write_phase_csv(std::ostream& out, const PhaseSeries& s);
void write_phase_csv(const std::filesystem::path& path, const PhaseSeries& s);
PhaseSeries read_phase_csv(std::istream& in, const std::string& name = "<stream>");
PhaseSeries read_phase_csv(const std::filesystem::path& path);

void write_timediff_csv(std::ostream& out, const TimeDiffSeries& s);
void write_timediff_csv(const std::filesystem::path& path, const TimeDiffSeries& s);
TimeDiffSeries read_timediff_csv(std::istream& in, const std::string& name = "<stream>");
TimeDiffSeries read_timediff_csv(const std::filesystem::path& path);

void write_session_csv(std::ostream& out, const TimeDiffSeries& s);
void write_session_csv(const std::filesystem::path& path, const TimeDiffSeries& s);
TimeDiffSeries read_session_csv(std::istream& in, const std::string& name = "<stream>");
TimeDiffSeries read_session_csv(const std::filesystem::path& path);

} // namespace satft

#endif
