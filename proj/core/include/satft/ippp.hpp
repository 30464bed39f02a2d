#ifndef SATFT_IPPP_HPP
#define SATFT_IPPP_HPP

#include <cstdint>
#include <vector>

#include "satft/constants.hpp"
#include "satft/series.hpp"

namespace satft {

/// The quantum of inter-batch discontinuity: the narrowlane wavelength in
/// light-time, 1/(f1+f2) of the two GNSS carriers (~0.3568 ns for GPS L1/L2).
struct NarrowlaneGrid {
    double lambda_s = 1.0 / (kGpsL1Hz + kGpsL2Hz);

    void validate() const;
};

/// One daily batch clock solution. The additive level of the series is
/// arbitrary by an integer multiple of the narrowlane wavelength; resets
/// inside the batch introduce further integer discontinuities.
struct BatchSolution {
    TimeDiffSeries series;          // technique ippp, one segment per contiguous run
    std::vector<Epoch> reset_epochs; // strictly inside the batch span
    std::vector<long> true_jumps;    // ground truth from simulation, for tests

    void validate() const;
};

struct StitchOptions {
    double fit_window_s = 7200.0; // trailing window fitted before a boundary
    int fit_order = 1;            // 1 or 2
    double guard = 0.25;          // reject boundaries with margin above this
    double max_gap_s = 21600.0;   // refuse automatic stitching across longer gaps
};

struct BoundaryCorrection {
    Epoch boundary;  // first epoch of the corrected segment
    long n = 0;      // integer multiple of lambda removed
    double margin = 0.0; // |offset/lambda - n|; 0 perfect, 0.5 undecidable
};

struct StitchResult {
    TimeDiffSeries series;
    std::vector<BoundaryCorrection> corrections;
};

/// Concatenates time-ordered batches into one continuous series. At every
/// boundary (between batches and at each ambiguity reset inside a batch)
/// the trailing fit window of the accepted series is fitted with a
/// polynomial, extrapolated to the first epoch of the next segment, and the
/// observed-minus-predicted offset is rounded to the nearest integer
/// multiple of lambda, which is subtracted from the whole next segment.
///
/// Throws AmbiguousStitchError when a margin exceeds the guard threshold
/// (widen the window or fix the data rather than guess: a wrong integer
/// silently biases the transferred frequency).
StitchResult stitch(const std::vector<BatchSolution>& batches, const NarrowlaneGrid& grid,
                    const StitchOptions& options = {});

/// Splits a truth series at MJD day boundaries, offsets every batch by a
/// seeded random integer multiple of lambda (in [-5, 5]) and adds white
/// measurement noise. The drawn integers are kept in BatchSolution::true_jumps
/// so tests can assert exact recovery.
std::vector<BatchSolution> simulate_ippp_observable(const TimeDiffSeries& truth,
                                                    const NarrowlaneGrid& grid,
                                                    std::uint64_t jump_seed,
                                                    double white_noise_s);

/// Corrections report CSV: header "boundary_mjd,n,margin".
void write_corrections_csv(std::ostream& out, const std::vector<BoundaryCorrection>& list);

} // namespace satft

#endif
