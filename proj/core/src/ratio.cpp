#include "satft/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

void SessionInputs::validate() const {
    local_sr.validate();
    local_yb.validate();
    link.validate();
    if (local_sr.dt != local_yb.dt || local_sr.dt != link.dt)
        throw AlignmentError("session streams must share one sample rate");
    if (refs.f_yb_hz.empty() || refs.f_sr_hz.empty())
        throw InvalidSpecError("reference frequencies are required");
}

namespace {

std::unordered_map<long long, double> index_stream(const TimeDiffSeries& s) {
    std::unordered_map<long long, double> map;
    map.reserve(s.size());
    for (const auto& seg : s.segments)
        for (std::size_t i = 0; i < seg.values.size(); ++i)
            map[grid_index(seg.start.advanced(static_cast<double>(i) * s.dt), s.dt)] =
                seg.values[i];
    return map;
}

} // namespace

AlignedBins align_and_average(const SessionInputs& inputs, double bin_s,
                              double min_occupancy_s) {
    inputs.validate();
    const double dt = inputs.local_sr.dt;
    double ratio = bin_s / dt;
    auto per_bin = static_cast<long long>(std::llround(ratio));
    if (per_bin < 1 || std::abs(ratio - static_cast<double>(per_bin)) > 1e-9)
        throw InvalidSpecError("bin must be a multiple of the stream sample interval");

    auto sr = index_stream(inputs.local_sr);
    auto yb = index_stream(inputs.local_yb);
    auto link = index_stream(inputs.link);

    long long lo = grid_index(inputs.local_sr.first_epoch(), dt);
    long long hi = grid_index(inputs.local_sr.last_epoch(), dt);
    lo = std::max(lo, grid_index(inputs.local_yb.first_epoch(), dt));
    hi = std::min(hi, grid_index(inputs.local_yb.last_epoch(), dt));
    lo = std::max(lo, grid_index(inputs.link.first_epoch(), dt));
    hi = std::min(hi, grid_index(inputs.link.last_epoch(), dt));
    if (lo > hi) throw CoverageError("session streams have no common span");

    AlignedBins bins;
    bins.bin_s = bin_s;
    const Epoch origin{50000, 0.0};
    const auto min_count =
        static_cast<long long>(std::ceil(min_occupancy_s / dt - 1e-9));

    // Bins are anchored to the absolute grid (midnight-aligned for the
    // standard 30 s bin), clipped to the common span.
    long long first_bin = lo >= 0 ? lo / per_bin : -((-lo + per_bin - 1) / per_bin);

    for (long long b = first_bin; b * per_bin <= hi; ++b) {
        double acc_sr = 0.0, acc_yb = 0.0, acc_link = 0.0;
        long long count = 0;
        for (long long j = b * per_bin; j < (b + 1) * per_bin; ++j) {
            auto i_sr = sr.find(j);
            if (i_sr == sr.end()) continue;
            auto i_yb = yb.find(j);
            if (i_yb == yb.end()) continue;
            auto i_link = link.find(j);
            if (i_link == link.end()) continue;
            acc_sr += i_sr->second;
            acc_yb += i_yb->second;
            acc_link += i_link->second;
            ++count;
        }
        if (count < std::max<long long>(min_count, 1)) continue;
        bins.epochs.push_back(origin.advanced(static_cast<double>(b * per_bin) * dt));
        bins.local_sr.push_back(acc_sr / static_cast<double>(count));
        bins.local_yb.push_back(acc_yb / static_cast<double>(count));
        bins.link.push_back(acc_link / static_cast<double>(count));
        bins.seconds_used.push_back(static_cast<int>(std::lround(static_cast<double>(count) * dt)));
    }
    if (bins.epochs.empty())
        throw CoverageError("no bin reached the occupancy threshold: the three streams have "
                            "no simultaneous data");
    return bins;
}

TimeDiffSeries combine_ratio(const AlignedBins& bins) {
    TimeDiffSeries out;
    out.dt = bins.bin_s;
    out.technique = Technique::raw;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        // (1+yb) / ((1+sr)(1+link)) - 1, evaluated as offsets
        double a = bins.local_sr[i];
        double b = bins.local_yb[i];
        double g = bins.link[i];
        double denom = (1.0 + a) * (1.0 + g);
        if (denom == 0.0)
            throw InvalidSpecError("combine_ratio: zero-valued bin at " + bins.epochs[i].str());
        out.append(bins.epochs[i], (b - a - g - a * g) / denom);
    }
    return out;
}

std::vector<DailyStat> daily_stats(const TimeDiffSeries& ratio_series, double bin_s,
                                   double day_gap_s) {
    ratio_series.validate();

    std::vector<DailyStat> days;
    std::vector<double> current;
    Epoch day_start;
    Epoch prev;
    bool first = true;

    auto flush = [&]() {
        if (current.empty()) return;
        DailyStat d;
        d.start = day_start;
        int y, mo, dd;
        mjd_to_calendar(day_start.mjd, y, mo, dd);
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, mo, dd);
        d.label = buf;
        d.count = current.size();
        d.period_s = static_cast<double>(current.size()) * bin_s;
        double mean = 0.0;
        for (double v : current) mean += v;
        mean /= static_cast<double>(current.size());
        d.mean = mean;
        if (current.size() >= 2) {
            double ss = 0.0;
            for (double v : current) ss += (v - mean) * (v - mean);
            d.sigma = std::sqrt(ss / static_cast<double>(current.size() - 1));
            d.has_sigma = true;
        }
        days.push_back(std::move(d));
        current.clear();
    };

    for (const auto& seg : ratio_series.segments) {
        for (std::size_t i = 0; i < seg.values.size(); ++i) {
            Epoch e = seg.start.advanced(static_cast<double>(i) * ratio_series.dt);
            if (first || (e - prev) > day_gap_s) {
                flush();
                day_start = e;
                first = false;
            }
            current.push_back(seg.values[i]);
            prev = e;
        }
    }
    flush();
    return days;
}

WeightedMean weighted_mean(const std::vector<DailyStat>& dailies) {
    if (dailies.empty()) throw InvalidSpecError("weighted_mean: no days");
    double wsum = 0.0, acc = 0.0;
    for (const auto& d : dailies) {
        if (!d.has_sigma || !(d.sigma > 0.0)) continue;
        double w = static_cast<double>(d.count) / (d.sigma * d.sigma);
        wsum += w;
        acc += w * d.mean;
    }
    WeightedMean out;
    if (wsum > 0.0) {
        out.value = acc / wsum;
        return out;
    }
    // every day degenerate: plain mean, flagged
    out.equal_weight_fallback = true;
    for (const auto& d : dailies) out.value += d.mean;
    out.value /= static_cast<double>(dailies.size());
    return out;
}

double daily_statistical_uncertainty(const PowerLawFit& fit, double period_s) {
    if (!(period_s > 0.0))
        throw InvalidSpecError("daily_statistical_uncertainty: period must be positive");
    return fit.evaluate(period_s);
}

double total_statistical(const std::vector<double>& daily_uncertainties) {
    if (daily_uncertainties.empty())
        throw InvalidSpecError("total_statistical: need at least one value");
    double ss = 0.0;
    for (double u : daily_uncertainties) ss += u * u;
    auto k = static_cast<double>(daily_uncertainties.size());
    return std::sqrt(ss / k / k);
}

std::vector<double> UncertaintyBudget::components() const {
    return {statistical, sr_systematic, yb_systematic, gravitational_redshift, link_systematic};
}

void UncertaintyBudget::validate() const {
    for (double c : components())
        if (c < 0.0 || !std::isfinite(c))
            throw InvalidSpecError("UncertaintyBudget: components must be finite and >= 0");
}

double budget_total(const UncertaintyBudget& budget) {
    budget.validate();
    double ss = 0.0;
    for (double c : budget.components()) ss += c * c;
    return std::sqrt(ss);
}

RatioResult final_ratio(double delta, double total_uncertainty, const RatioRefs& refs) {
    RatioResult out;
    out.weighted_offset = delta;
    out.total_uncertainty = total_uncertainty;
    out.ratio = format_exact_ratio(refs.f_yb_hz, refs.f_sr_hz, decimal_from_double(delta),
                                   decimal_from_double(total_uncertainty));
    return out;
}

TimeDiffSeries phase_from_frequency(const TimeDiffSeries& freq) {
    freq.validate();
    TimeDiffSeries out;
    out.dt = freq.dt;
    out.technique = freq.technique;
    for (const auto& seg : freq.segments) {
        Segment ps;
        ps.start = seg.start;
        ps.values.resize(seg.values.size() + 1);
        ps.values[0] = 0.0;
        for (std::size_t i = 0; i < seg.values.size(); ++i)
            ps.values[i + 1] = ps.values[i] + seg.values[i] * freq.dt;
        out.segments.push_back(std::move(ps));
    }
    return out;
}

SessionResult run_ratio_session(const SessionInputs& inputs, const SessionOptions& options) {
    SessionResult r;
    r.bins = align_and_average(inputs, options.bin_s, options.min_occupancy_s);
    r.ratio_series = combine_ratio(r.bins);

    // lumped stability of the ratio data
    TimeDiffSeries phase = phase_from_frequency(r.ratio_series);
    auto taus = octave_taus(Estimator::adev, phase.size(), phase.dt);
    if (taus.size() > 2) taus.resize(taus.size() - 1); // drop the noisiest top octave
    auto dev = deviation(phase, Estimator::adev, taus);
    r.adev = dev.curve;

    if (options.fit_override) {
        r.fit = *options.fit_override;
        r.fit.validate();
    } else {
        if (r.adev.size() < 3)
            throw InvalidSpecError(
                "session too short to fit the stability curve; supply ratio.fit_a/ratio.fit_b");
        r.fit = fit_powerlaw(r.adev, r.adev.tau_s.front(), r.adev.tau_s.back());
    }

    r.dailies = daily_stats(r.ratio_series, options.bin_s, options.day_gap_s);
    std::vector<double> daily_uncs;
    for (auto& d : r.dailies) {
        d.statistical_uncertainty = daily_statistical_uncertainty(r.fit, d.period_s);
        daily_uncs.push_back(d.statistical_uncertainty);
    }
    r.weighted = weighted_mean(r.dailies);

    r.budget.statistical = total_statistical(daily_uncs);
    r.budget.sr_systematic = options.sr_systematic;
    r.budget.yb_systematic = options.yb_systematic;
    r.budget.gravitational_redshift = options.gravitational_redshift;
    r.budget.link_systematic = options.link_systematic;
    r.budget_total_value = budget_total(r.budget);

    r.result = final_ratio(r.weighted.value, r.budget_total_value, inputs.refs);
    return r;
}

namespace {

std::string in_1e16(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v * 1e16);
    return buf;
}

} // namespace

void write_ratio_report(std::ostream& out, const SessionResult& r) {
    out << "session.days = " << r.dailies.size() << '\n';
    out << "session.bins = " << r.bins.size() << '\n';
    out << "fit.amplitude = " << format_g17(r.fit.amplitude) << '\n';
    out << "fit.exponent = " << format_g17(r.fit.exponent) << '\n';
    out << "ratio.weighted_offset_1e16 = " << in_1e16(r.weighted.value) << '\n';
    if (r.weighted.equal_weight_fallback)
        out << "ratio.weighted_offset_fallback = equal_weights\n";
    out << "budget.statistical_1e16 = " << in_1e16(r.budget.statistical) << '\n';
    out << "budget.sr_systematic_1e16 = " << in_1e16(r.budget.sr_systematic) << '\n';
    out << "budget.yb_systematic_1e16 = " << in_1e16(r.budget.yb_systematic) << '\n';
    out << "budget.gravitational_redshift_1e16 = " << in_1e16(r.budget.gravitational_redshift)
        << '\n';
    out << "budget.link_systematic_1e16 = " << in_1e16(r.budget.link_systematic) << '\n';
    out << "budget.total_1e16 = " << in_1e16(r.budget_total_value) << '\n';
    out << "ratio.value = " << r.result.ratio.digits << '\n';
    out << "ratio.value_grouped = " << r.result.ratio.grouped << '\n';
    out << "ratio.uncertainty_parenthetical = " << r.result.ratio.parenthetical << '\n';
    out << "ratio.value_20digits = " << r.result.ratio.digits_full << '\n';
}

void write_daily_table_csv(std::ostream& out, const SessionResult& r) {
    out << "date,mean_1e15,stddev_1e15,n_points,period_s,daily_statistical_uncertainty_1e15\n";
    char buf[160];
    for (const auto& d : r.dailies) {
        std::snprintf(buf, sizeof buf, "%s,%.2f,%.2f,%zu,%.0f,%.2f\n", d.label.c_str(),
                      d.mean * 1e15, d.has_sigma ? d.sigma * 1e15 : 0.0, d.count, d.period_s,
                      d.statistical_uncertainty * 1e15);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "weighted_mean,%.2f,,,,\n", r.weighted.value * 1e15);
    out << buf;
}

void write_budget_table_csv(std::ostream& out, const SessionResult& r) {
    out << "component,uncertainty_1e16\n";
    char buf[80];
    auto row = [&](const char* name, double v) {
        std::snprintf(buf, sizeof buf, "%s,%.1f\n", name, v * 1e16);
        out << buf;
    };
    row("statistical", r.budget.statistical);
    row("sr_systematic", r.budget.sr_systematic);
    row("yb_systematic", r.budget.yb_systematic);
    row("gravitational_redshifts", r.budget.gravitational_redshift);
    row("link_systematic", r.budget.link_systematic);
    row("total", r.budget_total_value);
}

} // namespace satft
