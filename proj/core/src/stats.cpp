#include "satft/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

double PowerLawFit::evaluate(double tau_s) const {
    return amplitude * std::pow(tau_s, exponent);
}

double PowerLawFit::solve_for_level(double level) const {
    if (!(level > 0.0)) throw InvalidSpecError("solve_for_level: level must be positive");
    if (exponent == 0.0) throw InvalidSpecError("solve_for_level: flat curve has no crossing");
    return std::pow(level / amplitude, 1.0 / exponent);
}

void PowerLawFit::validate() const {
    if (!(amplitude > 0.0)) throw InvalidSpecError("PowerLawFit: amplitude must be positive");
    if (!(exponent > -2.0 && exponent < 1.0))
        throw InvalidSpecError("PowerLawFit: exponent outside (-2, 1)");
}

DeviationResult deviation(const TimeDiffSeries& series, Estimator estimator,
                          const std::vector<double>& taus) {
    series.validate();
    DeviationResult result;
    result.curve.estimator = estimator;

    std::vector<double> sorted = taus;
    std::sort(sorted.begin(), sorted.end());

    for (double tau : sorted) {
        double ratio = tau / series.dt;
        double rounded = std::round(ratio);
        if (!(tau > 0.0) || rounded < 1.0 || std::abs(ratio - rounded) > 1e-6) {
            result.rejected.emplace_back(tau, "tau is not a positive multiple of the sample interval");
            continue;
        }
        auto m = static_cast<std::size_t>(rounded);
        DeviationAccumulator acc(estimator, m, series.dt);
        for (const auto& seg : series.segments) acc.add_segment(seg.values);
        if (acc.empty()) {
            result.rejected.emplace_back(tau, "record too short for this tau");
            continue;
        }
        double sigma = acc.deviation();
        if (!(sigma > 0.0) || !std::isfinite(sigma)) {
            result.rejected.emplace_back(tau, "degenerate (zero-variance) estimate");
            continue;
        }
        result.curve.tau_s.push_back(static_cast<double>(m) * series.dt);
        result.curve.sigma.push_back(sigma);
        result.curve.edf.push_back(acc.edf());
    }
    result.curve.validate();
    return result;
}

namespace {

// Boxcar-average `s` onto a grid with step dt_out = r * s.dt; the window of
// r fast samples is centred on each output epoch.
TimeDiffSeries average_to_grid(const TimeDiffSeries& s, double dt_out) {
    double ratio = dt_out / s.dt;
    auto r = static_cast<std::size_t>(std::llround(ratio));
    if (r < 1 || std::abs(ratio - static_cast<double>(r)) > 1e-6)
        throw AlignmentError("sample rates are not integer multiples: " +
                             std::to_string(s.dt) + " s vs " + std::to_string(dt_out) + " s");
    if (r == 1) return s;

    TimeDiffSeries out;
    out.dt = dt_out;
    out.technique = s.technique;
    out.iono_corrected = s.iono_corrected;
    const auto half = static_cast<long long>(r / 2);

    for (const auto& seg : s.segments) {
        const auto n = static_cast<long long>(seg.values.size());
        // First output epoch at or after the segment start that lies on the
        // coarse grid and whose window fits inside the segment.
        long long seg_idx0 = grid_index(seg.start, s.dt);
        long long coarse = (seg_idx0 + half + static_cast<long long>(r) - 1) /
                           static_cast<long long>(r); // ceil((idx0+half)/r)
        for (;; ++coarse) {
            long long centre = coarse * static_cast<long long>(r) - seg_idx0;
            long long lo = centre - half;
            long long hi = lo + static_cast<long long>(r); // exclusive
            if (hi > n) break;
            if (lo < 0) continue;
            double sum = 0.0;
            for (long long i = lo; i < hi; ++i) sum += seg.values[i];
            Epoch e = seg.start.advanced(static_cast<double>(centre) * s.dt);
            out.append(e, sum / static_cast<double>(r));
        }
    }
    if (out.empty()) throw AlignmentError("series too short to average onto the coarser grid");
    return out;
}

} // namespace

TimeDiffSeries double_difference(const TimeDiffSeries& a, const TimeDiffSeries& b) {
    a.validate();
    b.validate();
    double dt = std::max(a.dt, b.dt);
    TimeDiffSeries fa = (a.dt < dt) ? average_to_grid(a, dt) : a;
    TimeDiffSeries fb = (b.dt < dt) ? average_to_grid(b, dt) : b;

    std::unordered_map<long long, double> bmap;
    bmap.reserve(fb.size());
    for (const auto& seg : fb.segments)
        for (std::size_t i = 0; i < seg.values.size(); ++i)
            bmap[grid_index(seg.start.advanced(static_cast<double>(i) * dt), dt)] =
                seg.values[i];

    TimeDiffSeries out;
    out.dt = dt;
    out.technique = Technique::double_diff;
    for (const auto& seg : fa.segments) {
        for (std::size_t i = 0; i < seg.values.size(); ++i) {
            Epoch e = seg.start.advanced(static_cast<double>(i) * dt);
            auto it = bmap.find(grid_index(e, dt));
            if (it == bmap.end()) continue;
            out.append(e, seg.values[i] - it->second);
        }
    }
    if (out.empty()) throw AlignmentError("double_difference: no common epochs");
    return out;
}

TimeDiffSeries detrend(const TimeDiffSeries& series, double ma_window_s, double avg_bin_s) {
    series.validate();
    if (!(ma_window_s > 0.0) || !(avg_bin_s > 0.0))
        throw InvalidSpecError("detrend: window and bin must be positive");
    if (series.span_seconds() <= ma_window_s)
        throw InvalidSpecError("detrend: series span must exceed the moving-average window");

    auto h = static_cast<std::size_t>(std::llround(ma_window_s / (2.0 * series.dt)));
    if (h == 0) throw InvalidSpecError("detrend: window shorter than two samples");
    const std::size_t w = 2 * h + 1;

    double bin_ratio = avg_bin_s / series.dt;
    auto nb = static_cast<std::size_t>(std::llround(bin_ratio));
    if (nb < 1 || std::abs(bin_ratio - static_cast<double>(nb)) > 1e-6)
        throw InvalidSpecError("detrend: bin must be a multiple of the sample interval");

    TimeDiffSeries out;
    out.dt = static_cast<double>(nb) * series.dt;
    out.technique = series.technique;
    out.iono_corrected = series.iono_corrected;

    for (const auto& seg : series.segments) {
        const std::size_t n = seg.values.size();
        if (n < w) continue; // segment shorter than the window: all edge
        std::vector<double> prefix(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + seg.values[i];

        // residual after moving-average subtraction, interior only
        const std::size_t first = h, last = n - 1 - h; // inclusive
        std::vector<double> resid;
        resid.reserve(last - first + 1);
        for (std::size_t i = first; i <= last; ++i) {
            double ma = (prefix[i + h + 1] - prefix[i - h]) / static_cast<double>(w);
            resid.push_back(seg.values[i] - ma);
        }

        for (std::size_t k = 0; (k + 1) * nb <= resid.size(); ++k) {
            double sum = 0.0;
            for (std::size_t i = k * nb; i < (k + 1) * nb; ++i) sum += resid[i];
            double centre_idx = static_cast<double>(first + k * nb) +
                                0.5 * static_cast<double>(nb - 1);
            Epoch e = seg.start.advanced(centre_idx * series.dt);
            out.append(e, sum / static_cast<double>(nb));
        }
    }
    if (out.empty())
        throw InvalidSpecError("detrend: no segment long enough for the window");
    return out;
}

double fit_gradient(const TimeDiffSeries& dd) {
    dd.validate();
    const std::size_t n = dd.size();
    if (n < 2) throw InvalidSpecError("fit_gradient: need at least 2 points");

    double t_mean = 0.0, v_mean = 0.0;
    for (std::size_t s = 0; s < dd.segments.size(); ++s)
        for (std::size_t i = 0; i < dd.segments[s].values.size(); ++i) {
            t_mean += dd.rel_time(s, i);
            v_mean += dd.segments[s].values[i];
        }
    t_mean /= static_cast<double>(n);
    v_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t s = 0; s < dd.segments.size(); ++s)
        for (std::size_t i = 0; i < dd.segments[s].values.size(); ++i) {
            double t = dd.rel_time(s, i) - t_mean;
            sxx += t * t;
            sxy += t * (dd.segments[s].values[i] - v_mean);
        }
    if (sxx == 0.0) throw InvalidSpecError("fit_gradient: all samples at the same epoch");
    return sxy / sxx;
}

PowerLawFit fit_powerlaw(const StabilityCurve& curve, double tau_min_s, double tau_max_s) {
    curve.validate();
    std::vector<double> lt, ls;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.tau_s[i] < tau_min_s || curve.tau_s[i] > tau_max_s) continue;
        lt.push_back(std::log(curve.tau_s[i]));
        ls.push_back(std::log(curve.sigma[i]));
    }
    if (lt.size() < 3)
        throw InvalidSpecError("fit_powerlaw: need at least 3 points in the fit range");

    double tm = 0.0, sm = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        tm += lt[i];
        sm += ls[i];
    }
    tm /= static_cast<double>(lt.size());
    sm /= static_cast<double>(lt.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        sxx += (lt[i] - tm) * (lt[i] - tm);
        sxy += (lt[i] - tm) * (ls[i] - sm);
    }
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.amplitude = std::exp(sm - fit.exponent * tm);
    fit.tau_min_s = tau_min_s;
    fit.tau_max_s = tau_max_s;
    return fit;
}

void write_stability_csv(std::ostream& out, const StabilityCurve& curve) {
    out << "tau_s,sigma,estimator,edf\n";
    const std::string est = estimator_name(curve.estimator);
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << format_g17(curve.tau_s[i]) << ',' << format_g17(curve.sigma[i]) << ',' << est
            << ',' << format_g17(curve.edf[i]) << '\n';
}

void write_stability_csv(const std::filesystem::path& path, const StabilityCurve& curve) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    write_stability_csv(out, curve);
}

} // namespace satft
