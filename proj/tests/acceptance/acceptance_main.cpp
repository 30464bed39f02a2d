// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each check pins its tolerance in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "satft/ionex.hpp"
#include "satft/ippp.hpp"
#include "satft/linksim.hpp"
#include "satft/noise.hpp"
#include "satft/ratio.hpp"
#include "satft/stats.hpp"
#include "satft/twcp.hpp"

using namespace satft;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome ok(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// 1. daily-summary weighted mean
Outcome criterion_weighted_mean() {
    std::vector<DailyStat> dailies(3);
    dailies[0] = {"feb1", Epoch{57785, 0}, 0.33e-15, 57.60e-15, true, 479, 14370.0, 0.0};
    dailies[1] = {"feb2", Epoch{57786, 0}, 1.00e-15, 60.13e-15, true, 517, 15510.0, 0.0};
    dailies[2] = {"feb3", Epoch{57787, 0}, 0.17e-15, 54.85e-15, true, 477, 14310.0, 0.0};
    double wm = weighted_mean(dailies).value;
    bool pass = std::abs(wm - 0.49e-15) <= 0.005e-15;
    return {pass, fmt("weighted mean %.4fe-15 vs 0.49e-15 (tol 0.005e-15)", wm * 1e15)};
}

// 2. uncertainty budget totals
Outcome criterion_budget_totals() {
    double stat = total_statistical({9.7e-16, 9.1e-16, 9.6e-16});
    bool pass_stat = std::abs(stat - 5.5e-16) <= 0.05e-16;

    UncertaintyBudget budget;
    budget.statistical = 5.5e-16;
    budget.sr_systematic = 0.5e-16;
    budget.yb_systematic = 1.2e-16;
    budget.gravitational_redshift = 0.4e-16;
    budget.link_systematic = 1.0e-16;
    double total = budget_total(budget);
    bool pass_total = std::round(total * 1e17) / 1e17 == 5.8e-16 &&
                      std::abs(total - 5.75e-16) < 0.01e-16;
    return {pass_stat && pass_total,
            fmt("statistical %.3fe-16 (want 5.5+-0.05), total %.3fe-16 (rounds to %.1f)",
                stat * 1e16, total * 1e16, std::round(total * 1e17) / 10.0)};
}

// 3. fit-curve crossing with 5e-16
Outcome criterion_fit_crossing() {
    PowerLawFit fit;
    fit.amplitude = 9.4e-13;
    fit.exponent = -0.72;
    double t = fit.solve_for_level(5e-16);
    bool pass = t >= 3.3e4 && t <= 4.2e4;
    return {pass, fmt("crossing at %.3g s, want [3.3e4, 4.2e4]", t)};
}

// 4. daily statistical uncertainties from the fit curve
Outcome criterion_daily_uncertainties() {
    PowerLawFit fit;
    fit.amplitude = 9.4e-13;
    fit.exponent = -0.72;
    double u1 = daily_statistical_uncertainty(fit, 15510.0);
    double u2 = daily_statistical_uncertainty(fit, 14310.0);
    double u3 = daily_statistical_uncertainty(fit, 14370.0);
    bool pass = std::abs(u1 - 0.91e-15) <= 0.02e-15 && std::abs(u2 - 0.96e-15) <= 0.02e-15 &&
                std::abs(u3 - 0.97e-15) <= 0.03e-15;
    return {pass, fmt("15510 s -> %.3fe-15 (0.91+-0.02), 14310 s -> %.3fe-15 (0.96+-0.02), "
                      "14370 s -> %.3fe-15 (0.97+-0.03, documented offset)",
                      u1 * 1e15, u2 * 1e15, u3 * 1e15)};
}

// 5. final ratio digit string
Outcome criterion_final_ratio() {
    RatioRefs refs;
    refs.f_yb_hz = "1.20750703934333727"; // inverse-derived reference ratio
    refs.f_sr_hz = "1";
    RatioResult r = final_ratio(4.9e-16, 5.8e-16, refs);
    bool pass = r.ratio.digits == "1.20750703934333786" && r.ratio.parenthetical == "(70)";
    return {pass, "R = " + r.ratio.digits + " " + r.ratio.parenthetical +
                      " (want 1.20750703934333786 (70))"};
}

// 6. TWCP cancellation oracle: 5 days at 1 s, LO 1e4 noisier than the
// clocks, 30 km diurnal motion
Outcome criterion_twcp_cancellation() {
    const std::size_t n = 5 * 86400;
    NoiseSpec clock_noise;
    clock_noise.white_fm = 1e-13;
    PhaseSeries xa = synthesize_phase(clock_noise, n, 1.0, 101, Epoch{57851, 0.0});
    PhaseSeries xb = synthesize_phase(clock_noise, n, 1.0, 202, Epoch{57851, 0.0});

    SatelliteConfig sat;
    sat.lo_noise.white_fm = 1e-9;
    sat.oscillation.amplitude_m = 30.0e3;
    sat.oscillation.period_s = 86164.0;
    StationConfig sta, stb;
    CarrierPlan plan;

    FourPhaseSet phases = simulate_four_phases(xa, xb, sat, sta, stb, plan, 303);
    TimeDiffSeries estimate = combine(phases);

    std::vector<double> resid(n);
    const auto& v = estimate.segments[0].values;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        resid[i] = v[i] - (xa.x[i] - xb.x[i]);
        mean += resid[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (resid[i] - mean) * (resid[i] - mean);
    double rms = std::sqrt(ss / static_cast<double>(n));

    TimeDiffSeries rs = TimeDiffSeries::uniform(Epoch{57851, 0.0}, 1.0, resid,
                                                Technique::raw);
    double gradient = std::abs(fit_gradient(rs));
    bool pass = rms < 1e-13 && gradient < 1e-17;
    return {pass, fmt("residual RMS %.3g s (< 1e-13), residual gradient %.3g (< 1e-17)", rms,
                      gradient)};
}

// 7. IPPP stitching exactness: 100 trials x 10 boundaries
Outcome criterion_stitch_exactness() {
    NarrowlaneGrid grid;
    NoiseSpec maser;
    maser.white_fm = 1e-15 * std::sqrt(86400.0); // sigma_y(1 d) ~ 1e-15
    const double dt = 30.0;
    const auto n = static_cast<std::size_t>(11.0 * 86400.0 / dt); // 10 boundaries

    std::size_t exact = 0, total = 0;
    double worst_margin = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        PhaseSeries p = synthesize_phase(maser, n, dt, 5000 + trial, Epoch{57850, 0.0});
        TimeDiffSeries truth = TimeDiffSeries::uniform(p.start, dt, p.x, Technique::ippp);
        auto batches = simulate_ippp_observable(truth, grid, 9000 + trial, 10e-12);
        StitchResult r = stitch(batches, grid);
        for (std::size_t k = 1; k < batches.size(); ++k) {
            long want = batches[k].true_jumps[0] - batches[0].true_jumps[0];
            if (r.corrections[k - 1].n == want) ++exact;
            worst_margin = std::max(worst_margin, r.corrections[k - 1].margin);
            ++total;
        }
    }
    bool pass = exact == total && total == 1000 && worst_margin < 0.25;
    return {pass, fmt("%zu/%zu integers exact, worst margin %.3f (< 0.25)", exact, total,
                      worst_margin)};
}

// 8. estimator slope validation
Outcome criterion_estimator_slopes() {
    const std::size_t n = 1 << 14;
    const int seeds = 20;

    auto slope = [&](const NoiseSpec& spec, Estimator est) {
        std::vector<double> taus;
        for (std::size_t m = 4; m <= n / 16; m *= 2)
            taus.push_back(static_cast<double>(m));
        std::vector<double> acc(taus.size(), 0.0);
        for (int s = 0; s < seeds; ++s) {
            PhaseSeries p = synthesize_phase(spec, n, 1.0, 7000 + s);
            for (std::size_t k = 0; k < taus.size(); ++k)
                acc[k] += overlapping_deviation(est, p.x, 1.0,
                                                static_cast<std::size_t>(taus[k]));
        }
        double lt_m = 0, ls_m = 0;
        std::vector<double> lt(taus.size()), ls(taus.size());
        for (std::size_t k = 0; k < taus.size(); ++k) {
            lt[k] = std::log(taus[k]);
            ls[k] = std::log(acc[k] / seeds);
            lt_m += lt[k];
            ls_m += ls[k];
        }
        lt_m /= lt.size();
        ls_m /= ls.size();
        double sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < lt.size(); ++k) {
            sxx += (lt[k] - lt_m) * (lt[k] - lt_m);
            sxy += (lt[k] - lt_m) * (ls[k] - ls_m);
        }
        return sxy / sxx;
    };

    NoiseSpec wpm;
    wpm.white_pm = 1e-13;
    NoiseSpec wfm;
    wfm.white_fm = 1e-13;
    NoiseSpec rwfm;
    rwfm.random_walk_fm = 1e-15;

    double s_wpm_mdev = slope(wpm, Estimator::mdev);
    double s_wfm_adev = slope(wfm, Estimator::adev);
    double s_rw_adev = slope(rwfm, Estimator::adev);
    bool pass = std::abs(s_wpm_mdev + 1.5) <= 0.15 && std::abs(s_wfm_adev + 0.5) <= 0.15 &&
                std::abs(s_rw_adev - 0.5) <= 0.15;
    return {pass, fmt("white PM MDEV %.3f (-1.5+-0.15), white FM ADEV %.3f (-0.5+-0.15), "
                      "RW FM ADEV %.3f (+0.5+-0.15)",
                      s_wpm_mdev, s_wfm_adev, s_rw_adev)};
}

// 9. technique-disagreement gradients with injected drifts against 10 ps noise
Outcome criterion_gradients() {
    struct Case {
        double rate_1e16;
        double days;
    };
    const Case cases[] = {{-0.43, 12}, {3.8, 12}, {-0.66, 32}, {5.9, 32}};
    NoiseSpec maser;
    maser.white_fm = 8e-14;

    std::string detail;
    bool pass = true;
    int seed = 400;
    for (const Case& c : cases) {
        const double dt = 30.0;
        auto n = static_cast<std::size_t>(c.days * 86400.0 / dt);
        PhaseSeries clock = synthesize_phase(maser, n, dt, ++seed, Epoch{57772, 0.0});
        std::mt19937_64 rng(seed * 13);
        std::normal_distribution<double> gauss(0.0, 1.0);

        TimeDiffSeries a = TimeDiffSeries::uniform(clock.start, dt, clock.x, Technique::ppp);
        TimeDiffSeries b = a;
        b.technique = Technique::twcp;
        for (auto& seg : a.segments)
            for (std::size_t i = 0; i < seg.values.size(); ++i)
                seg.values[i] += c.rate_1e16 * 1e-16 * static_cast<double>(i) * dt +
                                 10e-12 * gauss(rng);
        for (auto& seg : b.segments)
            for (std::size_t i = 0; i < seg.values.size(); ++i)
                seg.values[i] += 10e-12 * gauss(rng);

        double g = fit_gradient(double_difference(a, b)) * 1e16;
        bool this_ok = std::abs(g - c.rate_1e16) <= 0.2;
        pass = pass && this_ok;
        detail += fmt("%+.2f->%+.3f ", c.rate_1e16, g);
    }
    return {pass, detail + "(each within +-0.2e-16)"};
}

// 10. IONEX round trip and the dispersive differential
Outcome criterion_ionex() {
    TECMap map = parse_ionex_file(std::string(SATFT_TEST_DATA_DIR) + "/code_daily.inx");
    std::stringstream buf;
    write_ionex(buf, map);
    TECMap again = parse_ionex(buf, "roundtrip");
    bool identical = again.vtec.size() == map.vtec.size();
    if (identical)
        for (std::size_t i = 0; i < map.vtec.size(); ++i)
            if (again.vtec[i] != map.vtec[i]) {
                identical = false;
                break;
            }

    // interpolation exact on a node
    bool node_ok = interpolate_vtec(map, map.lat_deg[10], map.lon_deg[20], map.epochs[3]) ==
                   map.at(3, 10, 20);

    double d11 = iono_phase_delay_s(100.0, 11.0e9);
    double d14 = iono_phase_delay_s(100.0, 14.0e9);
    double differential = d11 - d14;
    bool disp_ok = std::abs(differential - 0.425e-9) <= 0.001e-9;

    bool pass = identical && node_ok && disp_ok;
    return {pass, fmt("round trip %s, node interpolation %s, 100 TECU differential %.4f ns "
                      "(0.425+-0.001)",
                      identical ? "identical" : "DIFFERS", node_ok ? "exact" : "INEXACT",
                      differential * 1e9)};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"daily-summary weighted mean", criterion_weighted_mean},
        {"uncertainty budget totals", criterion_budget_totals},
        {"fit-curve crossing", criterion_fit_crossing},
        {"daily statistical uncertainties", criterion_daily_uncertainties},
        {"final ratio string", criterion_final_ratio},
        {"TWCP cancellation oracle", criterion_twcp_cancellation},
        {"IPPP stitching exactness", criterion_stitch_exactness},
        {"stability estimator slopes", criterion_estimator_slopes},
        {"technique-gradient recovery", criterion_gradients},
        {"IONEX round trip and dispersion", criterion_ionex},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].run();
        } catch (const std::exception& e) {
            out = fail(std::string("exception: ") + e.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2zu. %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, out.detail.c_str(), dt);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
