#include <iostream>
#include <memory>

#include "commands/common.hpp"
#include "satft/ionex.hpp"
#include "satft/series.hpp"

namespace satft::tools {

namespace {

PhaseSeries clock_from_config(const Config& cfg, const std::string& prefix, std::size_t n,
                              double dt, Epoch start, std::uint64_t seed) {
    PhaseSeries p = synthesize_phase(noise_from_config(cfg, prefix), n, dt, seed, start);
    return add_deterministic(p, cfg.get_double(prefix + ".offset_s", 0.0),
                             cfg.get_double(prefix + ".rate", 0.0),
                             cfg.get_double(prefix + ".drift", 0.0));
}

} // namespace

int run_simulate(const CommonArgs& args) {
    Config cfg = load_config(args);

    std::set<std::string> keys{"seed",
                               "clock.n",
                               "clock.dt_s",
                               "clock.start_mjd",
                               "clock.start_sod",
                               "link.f_up_hz",
                               "link.f_down_hz",
                               "link.range_a_m",
                               "link.range_b_m",
                               "link.osc_amplitude_m",
                               "link.osc_period_s",
                               "link.osc_phase_rad",
                               "link.tec_map",
                               "event.epoch_mjd",
                               "event.epoch_sod",
                               "event.excursion_s"};
    allow_noise_keys(keys, "clock.a");
    allow_noise_keys(keys, "clock.b");
    allow_noise_keys(keys, "link.lo");
    allow_station_keys(keys, "link.a");
    allow_station_keys(keys, "link.b");
    for (const char* k : {".offset_s", ".rate", ".drift"}) {
        keys.insert(std::string("clock.a") + k);
        keys.insert(std::string("clock.b") + k);
    }
    cfg.restrict_keys(keys);

    const auto n = static_cast<std::size_t>(cfg.get_long("clock.n", 86400));
    const double dt = cfg.get_double("clock.dt_s", 1.0);
    const Epoch start{static_cast<std::int32_t>(cfg.get_long("clock.start_mjd", 57851)),
                      cfg.get_double("clock.start_sod", 0.0)};
    const auto seed = static_cast<std::uint64_t>(cfg.get_long("seed", 1));

    PhaseSeries xa = clock_from_config(cfg, "clock.a", n, dt, start, seed * 2 + 1);
    PhaseSeries xb = clock_from_config(cfg, "clock.b", n, dt, start, seed * 2 + 2);

    SatelliteConfig sat;
    sat.range_a_m = cfg.get_double("link.range_a_m", sat.range_a_m);
    sat.range_b_m = cfg.get_double("link.range_b_m", sat.range_b_m);
    sat.oscillation.amplitude_m = cfg.get_double("link.osc_amplitude_m", 0.0);
    sat.oscillation.period_s = cfg.get_double("link.osc_period_s", 86164.0);
    sat.oscillation.phase_rad = cfg.get_double("link.osc_phase_rad", 0.0);
    sat.lo_noise = noise_from_config(cfg, "link.lo");

    StationConfig sta = station_from_config(cfg, "link.a");
    StationConfig stb = station_from_config(cfg, "link.b");

    std::unique_ptr<TECMap> map;
    if (cfg.has("link.tec_map")) {
        map = std::make_unique<TECMap>(parse_ionex_file(cfg.require_string("link.tec_map")));
        sta.vtec.map = map.get();
        stb.vtec.map = map.get();
    }

    CarrierPlan plan = plan_from_config(cfg);
    FourPhaseSet phases = simulate_four_phases(xa, xb, sat, sta, stb, plan, seed);

    if (cfg.has("event.excursion_s")) {
        Epoch at{static_cast<std::int32_t>(cfg.get_long("event.epoch_mjd", start.mjd)),
                 cfg.get_double("event.epoch_sod", 0.0)};
        phases = apply_snr_event(phases, at, cfg.require_double("event.excursion_s"));
    }

    TimeDiffSeries truth;
    truth.dt = dt;
    truth.technique = Technique::raw;
    for (std::size_t i = 0; i < n; ++i)
        truth.append(xa.epoch_at(i), xa.x[i] - xb.x[i]);

    auto dir = ensure_out_dir(args);
    write_phase_csv(dir / "clock_a.csv", xa);
    write_phase_csv(dir / "clock_b.csv", xb);
    write_timediff_csv(dir / "truth.csv", truth);
    write_fourphase_csv(dir / "fourphase.csv", phases);

    std::cout << "simulate: " << n << " epochs at " << dt << " s -> " << dir.string() << "\n";
    return kExitOk;
}

} // namespace satft::tools
