#include "satft/twcp.hpp"

#include <algorithm>
#include <cmath>

#include "satft/errors.hpp"

namespace satft {

double TecSeries::at(const Epoch& e) const {
    if (epochs.empty()) throw CoverageError("TEC series is empty");
    if (e < epochs.front() || epochs.back() < e)
        throw CoverageError("TEC series does not cover " + e.str() + " (covered: [" +
                            epochs.front().str() + ", " + epochs.back().str() + "])");
    auto it = std::upper_bound(epochs.begin(), epochs.end(), e);
    if (it == epochs.begin()) return tecu.front();
    std::size_t hi = static_cast<std::size_t>(it - epochs.begin());
    if (hi == epochs.size()) return tecu.back();
    std::size_t lo = hi - 1;
    double span = epochs[hi] - epochs[lo];
    double w = span > 0.0 ? (e - epochs[lo]) / span : 0.0;
    return (1.0 - w) * tecu[lo] + w * tecu[hi];
}

void TecSeries::validate() const {
    if (epochs.size() != tecu.size()) throw InvalidSpecError("TecSeries: ragged columns");
    if (epochs.empty()) throw InvalidSpecError("TecSeries: empty");
    for (std::size_t i = 1; i < epochs.size(); ++i)
        if (!(epochs[i - 1] < epochs[i]))
            throw InvalidSpecError("TecSeries: epochs must strictly increase");
    for (double v : tecu)
        if (!std::isfinite(v)) throw InvalidSpecError("TecSeries: non-finite TEC");
}

TecSeries TecSeries::constant(double tecu_value, const Epoch& from, const Epoch& to) {
    TecSeries s;
    s.epochs = {from, to};
    s.tecu = {tecu_value, tecu_value};
    if (!(from < to)) throw InvalidSpecError("TecSeries::constant: need from < to");
    return s;
}

TecSeries TecSeries::from_map(const TECMap& map, double lat_deg, double lon_deg,
                              const std::vector<Epoch>& at) {
    TecSeries s;
    s.epochs = at;
    s.tecu.reserve(at.size());
    for (const Epoch& e : at) s.tecu.push_back(interpolate_vtec(map, lat_deg, lon_deg, e));
    s.validate();
    return s;
}

TimeDiffSeries combine(const FourPhaseSet& phases) {
    phases.validate();
    const double two_fu = 2.0 * phases.plan.f_up_hz;

    // nominal grid step: smallest epoch spacing present
    double dt = 1.0;
    if (phases.size() > 1) {
        dt = 0.0;
        for (std::size_t i = 1; i < phases.size(); ++i) {
            double d = phases.epochs[i] - phases.epochs[i - 1];
            if (dt == 0.0 || d < dt) dt = d;
        }
    }

    TimeDiffSeries out;
    out.dt = dt;
    out.technique = Technique::twcp;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        double v = ((phases.l_ab[i] - phases.l_bb[i]) - (phases.l_ba[i] - phases.l_aa[i])) /
                   two_fu;
        out.append(phases.epochs[i], v);
    }
    return out;
}

TimeDiffSeries iono_correct(const TimeDiffSeries& diff, const TecSeries& tec_a,
                            const TecSeries& tec_b, const StationConfig& station_a,
                            const StationConfig& station_b, const CarrierPlan& plan) {
    diff.validate();
    tec_a.validate();
    tec_b.validate();
    plan.validate();

    const double f_up = plan.f_up_hz;
    const double f_down = plan.f_down_hz;
    const double coeff = kIonoCoeff * kTecuToElectronsPerM2 / (2.0 * kSpeedOfLight) *
                         (1.0 / (f_down * f_down) - 1.0 / (f_up * f_up));
    const double slant_a = slant_factor(station_a.elevation_deg);
    const double slant_b = slant_factor(station_b.elevation_deg);

    TimeDiffSeries out = diff;
    out.iono_corrected = true;
    for (auto& seg : out.segments) {
        for (std::size_t i = 0; i < seg.values.size(); ++i) {
            Epoch e = seg.start.advanced(static_cast<double>(i) * out.dt);
            double corr = coeff * (tec_a.at(e) * slant_a - tec_b.at(e) * slant_b);
            seg.values[i] -= corr;
        }
    }
    return out;
}

namespace {

double median_of(std::vector<double>& scratch) {
    std::size_t mid = scratch.size() / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    double hi = scratch[mid];
    if (scratch.size() % 2 == 1) return hi;
    double lo = *std::max_element(scratch.begin(), scratch.begin() + mid);
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<ExcursionEvent> detect_excursions(const TimeDiffSeries& diff, double threshold_s,
                                              std::size_t window) {
    diff.validate();
    if (window < 3) throw InvalidSpecError("detect_excursions: window must be >= 3");
    if (!(threshold_s > 0.0))
        throw InvalidSpecError("detect_excursions: threshold must be positive");
    if (diff.size() < 2 * window)
        throw InvalidSpecError("detect_excursions: series shorter than 2*window");

    std::vector<ExcursionEvent> events;
    std::vector<double> before, after;
    for (const auto& segref : diff.segments) {
        const auto& v = segref.values;
        if (v.size() < 2 * window) continue;

        // step estimate at each interior boundary
        std::vector<double> step(v.size(), 0.0);
        for (std::size_t i = window; i + window <= v.size(); ++i) {
            before.assign(v.begin() + static_cast<std::ptrdiff_t>(i - window),
                          v.begin() + static_cast<std::ptrdiff_t>(i));
            after.assign(v.begin() + static_cast<std::ptrdiff_t>(i),
                         v.begin() + static_cast<std::ptrdiff_t>(i + window));
            step[i] = median_of(after) - median_of(before);
        }

        // keep local maxima of |step| above threshold, one per window
        std::size_t i = window;
        while (i + window <= v.size()) {
            if (std::abs(step[i]) <= threshold_s) {
                ++i;
                continue;
            }
            std::size_t best = i;
            std::size_t j = i;
            while (j + window <= v.size() && std::abs(step[j]) > threshold_s &&
                   j - best <= window) {
                if (std::abs(step[j]) > std::abs(step[best])) best = j;
                ++j;
            }
            events.push_back(ExcursionEvent{
                segref.start.advanced(static_cast<double>(best) * diff.dt), step[best]});
            i = best + window;
        }
    }
    return events;
}

} // namespace satft
