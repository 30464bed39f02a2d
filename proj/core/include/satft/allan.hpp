#ifndef SATFT_ALLAN_HPP
#define SATFT_ALLAN_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace satft {

enum class Estimator { adev, mdev };

std::string estimator_name(Estimator e);
Estimator estimator_from_name(std::string_view name);

/// sigma_y(tau) points, strictly increasing in tau, with a first-order
/// equivalent-degrees-of-freedom estimate per point.
struct StabilityCurve {
    std::vector<double> tau_s;
    std::vector<double> sigma;
    Estimator estimator = Estimator::adev;
    std::vector<double> edf;

    std::size_t size() const { return tau_s.size(); }
    void validate() const; // tau increasing, sigma > 0
};

/// Accumulates second-difference (ADEV) or averaged-second-difference (MDEV)
/// statistics for one averaging factor m over any number of independent
/// phase segments, then yields the pooled deviation. Pooling segments keeps
/// gapped records honest: nothing is interpolated across a gap.
class DeviationAccumulator {
public:
    DeviationAccumulator(Estimator est, std::size_t m, double dt);

    /// Adds one gap-free phase segment x (seconds). Segments shorter than
    /// the estimator needs contribute nothing.
    void add_segment(std::span<const double> x);

    std::size_t term_count() const { return count_; }
    bool empty() const { return count_ == 0; }

    double deviation() const;
    double edf() const;

private:
    Estimator est_;
    std::size_t m_;
    double dt_;
    double sum_sq_ = 0.0;
    std::size_t count_ = 0;
};

/// Overlapping ADEV / MDEV of one gap-free phase record at tau = m*dt.
/// Returns 0 when the record is too short (callers should check
/// `min_samples` first).
double overlapping_deviation(Estimator est, std::span<const double> x, double dt,
                             std::size_t m);

/// Minimum number of phase samples for a valid estimate at factor m:
/// 2m+1 for ADEV, 3m+1 for MDEV.
std::size_t min_samples(Estimator est, std::size_t m);

/// Octave-spaced averaging times m*dt with m = 1, 2, 4, ... while
/// min_samples is satisfied; handy default tau grid.
std::vector<double> octave_taus(Estimator est, std::size_t n, double dt);

} // namespace satft

#endif
