#include <cstdio>
#include <fstream>
#include <iostream>

#include "commands/common.hpp"
#include "satft/csv.hpp"
#include "satft/errors.hpp"
#include "satft/stats.hpp"

namespace satft::tools {

namespace {

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void emit_deviation(const std::filesystem::path& dir, const std::string& stem,
                    const TimeDiffSeries& s, Estimator est) {
    auto taus = octave_taus(est, s.size(), s.dt);
    if (taus.empty()) return;
    auto res = deviation(s, est, taus);
    write_stability_csv(dir / (stem + "_" + estimator_name(est) + ".csv"), res.curve);
    for (const auto& [tau, why] : res.rejected)
        std::cerr << "note: " << stem << " " << estimator_name(est) << " tau " << tau
                  << " s skipped: " << why << "\n";
}

} // namespace

int run_stats(const CommonArgs& args, const std::vector<std::string>& input_paths) {
    Config cfg = load_config(args);
    cfg.restrict_keys({"stats.estimator", "stats.detrend", "stats.detrend_window_s",
                       "stats.detrend_bin_s"});

    if (input_paths.empty()) throw Error("stats: need at least one input series");

    const std::string which = cfg.get_string("stats.estimator", "both");
    const bool do_detrend = cfg.get_bool("stats.detrend", false);
    auto dir = ensure_out_dir(args);

    std::vector<TimeDiffSeries> series;
    std::vector<std::string> stems;
    for (const auto& path : input_paths) {
        series.push_back(read_timediff_csv(path));
        stems.push_back(stem_of(path));
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        if (which == "adev" || which == "both")
            emit_deviation(dir, stems[i], series[i], Estimator::adev);
        if (which == "mdev" || which == "both")
            emit_deviation(dir, stems[i], series[i], Estimator::mdev);
        if (do_detrend) {
            TimeDiffSeries flat =
                detrend(series[i], cfg.get_double("stats.detrend_window_s", 2 * 86400.0),
                        cfg.get_double("stats.detrend_bin_s", 3600.0));
            write_timediff_csv(dir / ("detrended_" + stems[i] + ".csv"), flat);
        }
    }

    // technique disagreement table over all pairs
    if (series.size() >= 2) {
        std::ofstream grad(dir / "gradients.csv");
        grad << "pair,days,disagreement_1e16\n";
        char buf[160];
        for (std::size_t i = 0; i < series.size(); ++i) {
            for (std::size_t j = i + 1; j < series.size(); ++j) {
                TimeDiffSeries dd = double_difference(series[i], series[j]);
                write_timediff_csv(dir / ("dd_" + stems[i] + "_" + stems[j] + ".csv"), dd);
                double g = fit_gradient(dd);
                std::snprintf(buf, sizeof buf, "%s-%s,%.2f,%.2f\n", stems[i].c_str(),
                              stems[j].c_str(), dd.span_seconds() / 86400.0, g * 1e16);
                grad << buf;
            }
        }
        std::cout << "stats: wrote pairwise double differences and gradients.csv\n";
    }

    std::cout << "stats: processed " << series.size() << " series -> " << dir.string()
              << "\n";
    return kExitOk;
}

} // namespace satft::tools
