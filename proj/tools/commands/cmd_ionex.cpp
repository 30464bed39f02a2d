#include <fstream>
#include <iostream>

#include "commands/common.hpp"
#include "satft/ionex.hpp"

namespace satft::tools {

int run_ionex_dump(const CommonArgs& args, const std::string& input_path) {
    Config cfg = load_config(args);
    cfg.restrict_keys({});

    TECMap map = parse_ionex_file(input_path);
    auto dir = ensure_out_dir(args);
    std::ofstream out(dir / "tec.csv");
    write_tecmap_csv(out, map);

    std::cout << "ionex-dump: " << map.n_epochs() << " maps, " << map.n_lat() << " x "
              << map.n_lon() << " grid, exponent " << map.exponent;
    if (!map.negative_cells.empty())
        std::cout << ", " << map.negative_cells.size() << " negative cell(s) flagged";
    std::cout << " -> " << (dir / "tec.csv").string() << "\n";
    return kExitOk;
}

} // namespace satft::tools
