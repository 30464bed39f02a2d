#include "commands/common.hpp"

#include "satft/errors.hpp"

namespace satft::tools {

Config load_config(const CommonArgs& args) {
    Config cfg;
    if (!args.config_path.empty()) cfg = Config::parse_file(args.config_path);
    if (args.seed_set) cfg.set("seed", std::to_string(args.seed));
    return cfg;
}

std::filesystem::path ensure_out_dir(const CommonArgs& args) {
    std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

NoiseSpec noise_from_config(const Config& cfg, const std::string& prefix) {
    NoiseSpec spec;
    spec.white_pm = cfg.get_double(prefix + ".white_pm", 0.0);
    spec.flicker_pm = cfg.get_double(prefix + ".flicker_pm", 0.0);
    spec.white_fm = cfg.get_double(prefix + ".white_fm", 0.0);
    spec.flicker_fm = cfg.get_double(prefix + ".flicker_fm", 0.0);
    spec.random_walk_fm = cfg.get_double(prefix + ".random_walk_fm", 0.0);
    spec.validate();
    return spec;
}

void allow_noise_keys(std::set<std::string>& keys, const std::string& prefix) {
    for (const char* k : {".white_pm", ".flicker_pm", ".white_fm", ".flicker_fm",
                          ".random_walk_fm"})
        keys.insert(prefix + k);
}

CarrierPlan plan_from_config(const Config& cfg) {
    CarrierPlan plan;
    plan.f_up_hz = cfg.get_double("link.f_up_hz", plan.f_up_hz);
    plan.f_down_hz = cfg.get_double("link.f_down_hz", plan.f_down_hz);
    plan.validate();
    return plan;
}

StationConfig station_from_config(const Config& cfg, const std::string& prefix) {
    StationConfig st;
    st.lat_deg = cfg.get_double(prefix + ".lat_deg", st.lat_deg);
    st.lon_deg = cfg.get_double(prefix + ".lon_deg", st.lon_deg);
    st.elevation_deg = cfg.get_double(prefix + ".elevation_deg", st.elevation_deg);
    st.vtec.constant_tecu = cfg.get_double(prefix + ".vtec_tecu", 0.0);
    st.path_delay_s = cfg.get_double(prefix + ".path_delay_s", 0.0);
    st.meas_noise_s = cfg.get_double(prefix + ".meas_noise_s", 0.0);
    st.validate();
    return st;
}

void allow_station_keys(std::set<std::string>& keys, const std::string& prefix) {
    for (const char* k : {".lat_deg", ".lon_deg", ".elevation_deg", ".vtec_tecu",
                          ".path_delay_s", ".meas_noise_s"})
        keys.insert(prefix + k);
}

} // namespace satft::tools
