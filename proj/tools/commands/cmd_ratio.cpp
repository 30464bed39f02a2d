#include <fstream>
#include <iostream>

#include "commands/common.hpp"
#include "satft/ratio.hpp"

namespace satft::tools {

int run_ratio(const CommonArgs& args, const std::string& sr_path, const std::string& yb_path,
              const std::string& link_path) {
    Config cfg = load_config(args);
    cfg.restrict_keys({"ratio.bin_s", "ratio.min_bin_s", "ratio.day_gap_s", "ratio.ref_yb_hz",
                       "ratio.ref_sr_hz", "ratio.fit_a", "ratio.fit_b",
                       "ratio.sr_systematic_1e16", "ratio.yb_systematic_1e16",
                       "ratio.redshift_1e16", "ratio.link_systematic_1e16"});

    SessionInputs inputs;
    inputs.local_sr = read_session_csv(sr_path);
    inputs.local_yb = read_session_csv(yb_path);
    inputs.link = read_session_csv(link_path);
    inputs.refs.f_yb_hz = cfg.get_string("ratio.ref_yb_hz", inputs.refs.f_yb_hz);
    inputs.refs.f_sr_hz = cfg.get_string("ratio.ref_sr_hz", inputs.refs.f_sr_hz);

    SessionOptions options;
    options.bin_s = cfg.get_double("ratio.bin_s", options.bin_s);
    options.min_occupancy_s = cfg.get_double("ratio.min_bin_s", options.min_occupancy_s);
    options.day_gap_s = cfg.get_double("ratio.day_gap_s", options.day_gap_s);
    options.sr_systematic = cfg.get_double("ratio.sr_systematic_1e16", 0.5) * 1e-16;
    options.yb_systematic = cfg.get_double("ratio.yb_systematic_1e16", 1.2) * 1e-16;
    options.gravitational_redshift = cfg.get_double("ratio.redshift_1e16", 0.4) * 1e-16;
    options.link_systematic = cfg.get_double("ratio.link_systematic_1e16", 1.0) * 1e-16;
    if (cfg.has("ratio.fit_a") || cfg.has("ratio.fit_b")) {
        PowerLawFit fit;
        fit.amplitude = cfg.require_double("ratio.fit_a");
        fit.exponent = cfg.require_double("ratio.fit_b");
        fit.tau_min_s = options.bin_s;
        fit.tau_max_s = 1e9;
        options.fit_override = fit;
    }

    SessionResult result = run_ratio_session(inputs, options);

    auto dir = ensure_out_dir(args);
    {
        std::ofstream out(dir / "report.txt");
        write_ratio_report(out, result);
    }
    {
        std::ofstream out(dir / "table_daily.csv");
        write_daily_table_csv(out, result);
    }
    {
        std::ofstream out(dir / "table_budget.csv");
        write_budget_table_csv(out, result);
    }
    write_stability_csv(dir / "ratio_adev.csv", result.adev);
    write_session_csv(dir / "ratio_series.csv", result.ratio_series);

    std::cout << "ratio: " << result.dailies.size() << " day(s), weighted offset "
              << result.weighted.value * 1e16 << "e-16, total "
              << result.budget_total_value * 1e16 << "e-16\n";
    std::cout << "ratio: R = " << result.result.ratio.grouped << " "
              << result.result.ratio.parenthetical << "\n";
    return kExitOk;
}

} // namespace satft::tools
