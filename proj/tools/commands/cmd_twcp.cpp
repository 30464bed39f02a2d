#include <fstream>
#include <iostream>
#include <memory>

#include "commands/common.hpp"
#include "satft/csv.hpp"
#include "satft/ionex.hpp"
#include "satft/twcp.hpp"

namespace satft::tools {

int run_twcp(const CommonArgs& args, const std::string& fourphase_path) {
    Config cfg = load_config(args);

    std::set<std::string> keys{"link.f_up_hz", "link.f_down_hz",    "twcp.tec_map",
                               "twcp.vtec_a_tecu", "twcp.vtec_b_tecu", "twcp.detect_threshold_s",
                               "twcp.detect_window"};
    allow_station_keys(keys, "link.a");
    allow_station_keys(keys, "link.b");
    cfg.restrict_keys(keys);

    CarrierPlan plan = plan_from_config(cfg);
    FourPhaseSet phases = read_fourphase_csv(fourphase_path, plan);
    TimeDiffSeries diff = combine(phases);

    const bool want_iono = cfg.has("twcp.tec_map") ||
                           cfg.has("twcp.vtec_a_tecu") || cfg.has("twcp.vtec_b_tecu");
    if (want_iono) {
        StationConfig sta = station_from_config(cfg, "link.a");
        StationConfig stb = station_from_config(cfg, "link.b");
        TecSeries tec_a, tec_b;
        if (cfg.has("twcp.tec_map")) {
            TECMap map = parse_ionex_file(cfg.require_string("twcp.tec_map"));
            tec_a = TecSeries::from_map(map, sta.lat_deg, sta.lon_deg, map.epochs);
            tec_b = TecSeries::from_map(map, stb.lat_deg, stb.lon_deg, map.epochs);
        } else {
            Epoch lo = diff.first_epoch().advanced(-diff.dt);
            Epoch hi = diff.last_epoch().advanced(diff.dt);
            tec_a = TecSeries::constant(cfg.get_double("twcp.vtec_a_tecu", 0.0), lo, hi);
            tec_b = TecSeries::constant(cfg.get_double("twcp.vtec_b_tecu", 0.0), lo, hi);
        }
        diff = iono_correct(diff, tec_a, tec_b, sta, stb, plan);
    }

    auto dir = ensure_out_dir(args);
    write_timediff_csv(dir / "twcp.csv", diff);

    if (cfg.has("twcp.detect_threshold_s")) {
        double threshold = cfg.require_double("twcp.detect_threshold_s");
        auto window = static_cast<std::size_t>(cfg.get_long("twcp.detect_window", 60));
        auto events = detect_excursions(diff, threshold, window);
        std::ofstream out(dir / "excursions.csv");
        out << "mjd,sod,step_seconds\n";
        for (const auto& e : events)
            out << e.epoch.mjd << ',' << format_g17(e.epoch.sod) << ','
                << format_g17(e.step_s) << '\n';
        std::cout << "twcp: " << events.size() << " excursion(s) flagged\n";
    }

    std::cout << "twcp: " << diff.size() << " samples in " << diff.segments.size()
              << " segment(s) -> " << (dir / "twcp.csv").string() << "\n";
    return kExitOk;
}

} // namespace satft::tools
