#include "satft/ippp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

void NarrowlaneGrid::validate() const {
    if (!(lambda_s > 0.0)) throw InvalidSpecError("NarrowlaneGrid: lambda must be positive");
}

void BatchSolution::validate() const {
    series.validate();
    Epoch first = series.first_epoch();
    Epoch last = series.last_epoch();
    for (const Epoch& r : reset_epochs)
        if (!(first < r) || !(r < last))
            throw InvalidSpecError("BatchSolution: reset epoch " + r.str() +
                                   " is not strictly inside the batch span");
}

namespace {

// One contiguous run whose additive level is consistent; boundaries are
// between batches, at data gaps and at ambiguity resets.
struct Piece {
    Epoch start;
    std::vector<double> values;
};

// Least-squares polynomial (order 1 or 2) in t' = t - t_pred evaluated at
// t' = 0, i.e. the extrapolated value at the prediction epoch.
double extrapolate(const std::vector<double>& t, const std::vector<double>& v, int order,
                   double t_pred) {
    const std::size_t n = t.size();
    const int terms = order + 1;
    double m[3][4] = {{0}};
    for (std::size_t k = 0; k < n; ++k) {
        double tp = t[k] - t_pred;
        double pows[5] = {1.0, tp, tp * tp, tp * tp * tp, tp * tp * tp * tp};
        for (int i = 0; i < terms; ++i) {
            for (int j = 0; j < terms; ++j) m[i][j] += pows[i + j];
            m[i][terms] += pows[i] * v[k];
        }
    }
    // Gaussian elimination with partial pivoting on the (terms x terms+1) system.
    for (int col = 0; col < terms; ++col) {
        int pivot = col;
        for (int r = col + 1; r < terms; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (m[pivot][col] == 0.0) throw InvalidSpecError("stitch: degenerate fit window");
        if (pivot != col)
            for (int c = 0; c <= terms; ++c) std::swap(m[pivot][c], m[col][c]);
        for (int r = 0; r < terms; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c <= terms; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return m[0][terms] / m[0][0];
}

} // namespace

StitchResult stitch(const std::vector<BatchSolution>& batches, const NarrowlaneGrid& grid,
                    const StitchOptions& options) {
    grid.validate();
    if (batches.empty()) throw InvalidSpecError("stitch: need at least one batch");
    if (options.fit_order != 1 && options.fit_order != 2)
        throw InvalidSpecError("stitch: fit order must be 1 or 2");
    if (!(options.fit_window_s > 0.0))
        throw InvalidSpecError("stitch: fit window must be positive");

    const double dt = batches.front().series.dt;
    for (const auto& b : batches) {
        b.validate();
        if (b.series.dt != dt)
            throw AlignmentError("stitch: batches must share one sample rate");
    }
    for (std::size_t i = 1; i < batches.size(); ++i)
        if (!(batches[i - 1].series.last_epoch() < batches[i].series.first_epoch()))
            throw InvalidSpecError("stitch: batches must be time-ordered and non-overlapping");

    // Cut every batch into level-consistent pieces: segment boundaries are
    // natural cuts, reset epochs add cuts inside a segment.
    std::vector<Piece> pieces;
    for (const auto& b : batches) {
        std::size_t reset_i = 0;
        std::vector<Epoch> resets = b.reset_epochs;
        std::sort(resets.begin(), resets.end());
        for (const auto& seg : b.series.segments) {
            Piece cur{seg.start, {}};
            for (std::size_t i = 0; i < seg.values.size(); ++i) {
                Epoch e = seg.start.advanced(static_cast<double>(i) * dt);
                if (reset_i < resets.size() && !(e < resets[reset_i])) {
                    if (!cur.values.empty()) pieces.push_back(std::move(cur));
                    cur = Piece{e, {}};
                    ++reset_i;
                }
                cur.values.push_back(seg.values[i]);
            }
            if (!cur.values.empty()) pieces.push_back(std::move(cur));
        }
    }

    StitchResult result;
    result.series.dt = dt;
    result.series.technique = Technique::ippp;

    // Trailing window of the accepted series, kept as (epoch seconds
    // relative to the current boundary, value) for the fit.
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        Piece& piece = pieces[p];
        double correction = 0.0;
        if (p > 0) {
            Epoch accepted_end = result.series.last_epoch();
            double gap = piece.start - accepted_end;
            if (gap > options.max_gap_s)
                throw AmbiguousStitchError(
                    "stitch: gap of " + std::to_string(gap) + " s before " + piece.start.str() +
                        " exceeds the automatic-stitch limit of " +
                        std::to_string(options.max_gap_s) + " s",
                    piece.start.to_mjd(), 0.5);

            // collect the trailing fit window, newest segments first
            std::vector<double> t, v;
            Epoch base = result.series.first_epoch();
            double boundary_t = piece.start - base;
            double window_start = boundary_t - (options.fit_window_s + gap);
            for (std::size_t s = result.series.segments.size(); s-- > 0;) {
                const auto& seg = result.series.segments[s];
                double seg_t0 = seg.start - base;
                double seg_t_end = seg_t0 + static_cast<double>(seg.values.size() - 1) * dt;
                if (seg_t_end < window_start) break;
                auto first = static_cast<std::size_t>(
                    std::max(0.0, std::ceil((window_start - seg_t0) / dt)));
                for (std::size_t i = first; i < seg.values.size(); ++i) {
                    t.push_back(seg_t0 + static_cast<double>(i) * dt);
                    v.push_back(seg.values[i]);
                }
            }
            if (t.size() < static_cast<std::size_t>(options.fit_order + 2))
                throw InvalidSpecError("stitch: fewer than " +
                                       std::to_string(options.fit_order + 2) +
                                       " samples in the fit window before " + piece.start.str());

            double predicted = extrapolate(t, v, options.fit_order, boundary_t);
            double offset = piece.values.front() - predicted;
            double ratio = offset / grid.lambda_s;
            long n = std::lround(ratio);
            double margin = std::abs(ratio - static_cast<double>(n));
            if (margin > options.guard)
                throw AmbiguousStitchError(
                    "stitch: ambiguous boundary at " + piece.start.str() + " (margin " +
                        std::to_string(margin) + " > guard " + std::to_string(options.guard) +
                        "); widen the fit window or repair the data",
                    piece.start.to_mjd(), margin);

            correction = static_cast<double>(n) * grid.lambda_s;
            result.corrections.push_back(BoundaryCorrection{piece.start, n, margin});
        }
        for (std::size_t i = 0; i < piece.values.size(); ++i)
            result.series.append(piece.start.advanced(static_cast<double>(i) * dt),
                                 piece.values[i] - correction);
    }
    return result;
}

std::vector<BatchSolution> simulate_ippp_observable(const TimeDiffSeries& truth,
                                                    const NarrowlaneGrid& grid,
                                                    std::uint64_t jump_seed,
                                                    double white_noise_s) {
    truth.validate();
    grid.validate();
    if (truth.span_seconds() < kSecondsPerDay)
        throw InvalidSpecError("simulate_ippp_observable: truth must span at least one day");
    if (white_noise_s < 0.0)
        throw InvalidSpecError("simulate_ippp_observable: noise must be >= 0");

    std::mt19937_64 rng(jump_seed);
    std::uniform_int_distribution<long> jump(-5, 5);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<BatchSolution> batches;
    std::int32_t current_mjd = 0;
    for (const auto& seg : truth.segments) {
        for (std::size_t i = 0; i < seg.values.size(); ++i) {
            Epoch e = seg.start.advanced(static_cast<double>(i) * truth.dt);
            if (batches.empty() || e.mjd != current_mjd) {
                current_mjd = e.mjd;
                BatchSolution b;
                b.series.dt = truth.dt;
                b.series.technique = Technique::ippp;
                b.true_jumps.push_back(jump(rng));
                batches.push_back(std::move(b));
            }
            BatchSolution& b = batches.back();
            double v = seg.values[i] + static_cast<double>(b.true_jumps.front()) * grid.lambda_s;
            if (white_noise_s > 0.0) v += white_noise_s * gauss(rng);
            b.series.append(e, v);
        }
    }
    return batches;
}

void write_corrections_csv(std::ostream& out, const std::vector<BoundaryCorrection>& list) {
    out << "boundary_mjd,n,margin\n";
    for (const auto& c : list)
        out << format_g17(c.boundary.to_mjd()) << ',' << c.n << ',' << format_g17(c.margin)
            << '\n';
}

} // namespace satft
