// satft: simulate and analyse satellite-based frequency transfer links
// (two-way carrier phase and IPPP-style batch solutions).

#include <CLI11.hpp>
#include <iostream>

#include "commands/common.hpp"
#include "satft/errors.hpp"

using namespace satft;
using namespace satft::tools;

int main(int argc, char** argv) {
    CLI::App app{"satellite frequency transfer simulator and analysis toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string fourphase, sr, yb, link, ionex_in;
    std::vector<std::string> batches, inputs;

    auto add_common = [&](CLI::App* cmd, bool with_seed = true) {
        cmd->add_option("-c,--config", args.config_path, "flat key = value config file");
        cmd->add_option("-o,--out", args.out_dir, "output directory")->capture_default_str();
        if (with_seed)
            cmd->add_option("--seed", args.seed, "override the config seed")
                ->each([&](const std::string&) { args.seed_set = true; });
    };

    CLI::App* simulate =
        app.add_subcommand("simulate", "synthesize clocks and a two-way link exchange");
    add_common(simulate);

    CLI::App* twcp = app.add_subcommand(
        "twcp", "four-phase cancellation and ionosphere correction of a link exchange");
    add_common(twcp, false);
    twcp->add_option("fourphase", fourphase, "FourPhaseSet CSV")->required();

    CLI::App* stitch_cmd = app.add_subcommand(
        "stitch", "concatenate daily batch solutions across narrowlane discontinuities");
    add_common(stitch_cmd, false);
    stitch_cmd->add_option("batches", batches, "batch TimeDiffSeries CSVs, time-ordered")
        ->required()
        ->expected(-1);

    CLI::App* stats_cmd = app.add_subcommand(
        "stats", "stability curves, double differences, gradients, detrending");
    add_common(stats_cmd, false);
    stats_cmd->add_option("inputs", inputs, "TimeDiffSeries CSVs")->required()->expected(-1);

    CLI::App* ratio_cmd = app.add_subcommand(
        "ratio", "optical frequency-ratio session: tables, budget and the final ratio");
    add_common(ratio_cmd, false);
    ratio_cmd->add_option("--sr", sr, "Sr-vs-maser local stream CSV")->required();
    ratio_cmd->add_option("--yb", yb, "Yb-vs-UTC(k) local stream CSV")->required();
    ratio_cmd->add_option("--link", link, "satellite link stream CSV")->required();

    CLI::App* ionex_cmd =
        app.add_subcommand("ionex-dump", "parse an IONEX file and dump the TEC grid as CSV");
    add_common(ionex_cmd, false);
    ionex_cmd->add_option("input", ionex_in, "IONEX 1.0 file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(args);
        if (twcp->parsed()) return run_twcp(args, fourphase);
        if (stitch_cmd->parsed()) return run_stitch(args, batches);
        if (stats_cmd->parsed()) return run_stats(args, inputs);
        if (ratio_cmd->parsed()) return run_ratio(args, sr, yb, link);
        if (ionex_cmd->parsed()) return run_ionex_dump(args, ionex_in);
    } catch (const AmbiguousStitchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAmbiguousStitch;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
