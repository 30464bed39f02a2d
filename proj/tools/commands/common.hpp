#ifndef SATFT_TOOLS_COMMON_HPP
#define SATFT_TOOLS_COMMON_HPP

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "satft/config.hpp"
#include "satft/linksim.hpp"
#include "satft/noise.hpp"

namespace satft::tools {

// exit codes: 0 success, 1 usage, 2 data error, 3 ambiguous stitch
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAmbiguousStitch = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    long seed = 0;
    bool seed_set = false;
};

/// Loads the config (empty config when no file given) and folds in the
/// --seed override.
Config load_config(const CommonArgs& args);

std::filesystem::path ensure_out_dir(const CommonArgs& args);

/// Reads the five per-process amplitudes under `prefix` (e.g. "clock.a"):
/// prefix.white_pm, .flicker_pm, .white_fm, .flicker_fm, .random_walk_fm.
NoiseSpec noise_from_config(const Config& cfg, const std::string& prefix);

/// Adds the NoiseSpec key names for `prefix` to an allowed-key set.
void allow_noise_keys(std::set<std::string>& keys, const std::string& prefix);

CarrierPlan plan_from_config(const Config& cfg);

/// Station geometry/path keys under "link.a" / "link.b".
StationConfig station_from_config(const Config& cfg, const std::string& prefix);
void allow_station_keys(std::set<std::string>& keys, const std::string& prefix);

int run_simulate(const CommonArgs& args);
int run_twcp(const CommonArgs& args, const std::string& fourphase_path);
int run_stitch(const CommonArgs& args, const std::vector<std::string>& batch_paths);
int run_stats(const CommonArgs& args, const std::vector<std::string>& input_paths);
int run_ratio(const CommonArgs& args, const std::string& sr_path, const std::string& yb_path,
              const std::string& link_path);
int run_ionex_dump(const CommonArgs& args, const std::string& input_path);

} // namespace satft::tools

#endif
