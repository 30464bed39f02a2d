#include <fstream>
#include <iostream>

#include "commands/common.hpp"
#include "satft/csv.hpp"
#include "satft/errors.hpp"
#include "satft/ippp.hpp"

namespace satft::tools {

namespace {

// optional sidecar "<batch>.resets" with rows "mjd,sod"
std::vector<Epoch> read_resets(const std::filesystem::path& batch_path) {
    std::filesystem::path sidecar = batch_path;
    sidecar += ".resets";
    std::vector<Epoch> resets;
    std::ifstream in(sidecar);
    if (!in) return resets;
    LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (line.empty() || line.rfind("mjd", 0) == 0) continue;
        auto f = split_csv(line);
        if (f.size() < 2)
            throw ParseError(sidecar.string() + ": expected 'mjd,sod'", reader.line_number());
        resets.emplace_back(static_cast<std::int32_t>(parse_long(f[0], reader.line_number())),
                            parse_double(f[1], reader.line_number()));
    }
    return resets;
}

} // namespace

int run_stitch(const CommonArgs& args, const std::vector<std::string>& batch_paths) {
    Config cfg = load_config(args);
    cfg.restrict_keys({"stitch.fit_window_s", "stitch.fit_order", "stitch.guard",
                       "stitch.max_gap_s", "stitch.lambda_s"});

    NarrowlaneGrid grid;
    grid.lambda_s = cfg.get_double("stitch.lambda_s", grid.lambda_s);

    StitchOptions options;
    options.fit_window_s = cfg.get_double("stitch.fit_window_s", options.fit_window_s);
    options.fit_order = static_cast<int>(cfg.get_long("stitch.fit_order", options.fit_order));
    options.guard = cfg.get_double("stitch.guard", options.guard);
    options.max_gap_s = cfg.get_double("stitch.max_gap_s", options.max_gap_s);

    std::vector<BatchSolution> batches;
    for (const auto& path : batch_paths) {
        BatchSolution b;
        b.series = read_timediff_csv(path);
        b.series.technique = Technique::ippp;
        b.reset_epochs = read_resets(path);
        batches.push_back(std::move(b));
    }

    StitchResult result = stitch(batches, grid, options);

    auto dir = ensure_out_dir(args);
    write_timediff_csv(dir / "stitched.csv", result.series);
    std::ofstream corr(dir / "corrections.csv");
    write_corrections_csv(corr, result.corrections);

    std::cout << "stitch: " << batches.size() << " batch(es), "
              << result.corrections.size() << " boundary correction(s) -> "
              << (dir / "stitched.csv").string() << "\n";
    return kExitOk;
}

} // namespace satft::tools
