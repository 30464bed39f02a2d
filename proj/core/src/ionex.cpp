#include "satft/ionex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

namespace {

std::string label_of(const std::string& line) {
    // Record labels live in columns 61-80.
    if (line.size() <= 60) return "";
    std::string label = line.substr(60);
    while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
    return label;
}

double field_double(const std::string& line, std::size_t pos, std::size_t len,
                    std::size_t lineno) {
    if (line.size() < pos) throw ParseError("line too short", lineno);
    std::string f = line.substr(pos, len);
    std::istringstream ss(f);
    double v = 0.0;
    ss >> v;
    if (ss.fail()) throw ParseError("expected a number in '" + f + "'", lineno);
    return v;
}

int field_int(const std::string& line, std::size_t pos, std::size_t len, std::size_t lineno) {
    return static_cast<int>(std::lround(field_double(line, pos, len, lineno)));
}

Epoch epoch_field(const std::string& line, std::size_t lineno) {
    int y = field_int(line, 0, 6, lineno);
    int mo = field_int(line, 6, 6, lineno);
    int d = field_int(line, 12, 6, lineno);
    int h = field_int(line, 18, 6, lineno);
    int mi = field_int(line, 24, 6, lineno);
    int s = field_int(line, 30, 6, lineno);
    return Epoch(calendar_to_mjd(y, mo, d), h * 3600.0 + mi * 60.0 + s);
}

std::vector<double> grid_from_range(double first, double last, double step,
                                    std::size_t lineno) {
    if (step == 0.0) throw ParseError("grid step must be nonzero", lineno);
    double span = (last - first) / step;
    if (span < 0.0) throw ParseError("grid step sign does not match the range", lineno);
    auto count = static_cast<std::size_t>(std::lround(span)) + 1;
    if (std::abs(span - std::round(span)) > 1e-6)
        throw ParseError("grid range is not a whole number of steps", lineno);
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = first + static_cast<double>(i) * step;
    return grid;
}

} // namespace

void TECMap::validate() const {
    if (epochs.empty() || lat_deg.empty() || lon_deg.empty())
        throw InvalidSpecError("TECMap: empty grid");
    for (std::size_t i = 1; i < lat_deg.size(); ++i)
        if (!(lat_deg[i] < lat_deg[i - 1]))
            throw InvalidSpecError("TECMap: latitudes must be strictly descending");
    for (std::size_t i = 1; i < lon_deg.size(); ++i)
        if (!(lon_deg[i] > lon_deg[i - 1]))
            throw InvalidSpecError("TECMap: longitudes must be strictly ascending");
    for (std::size_t i = 1; i < epochs.size(); ++i)
        if (!(epochs[i - 1] < epochs[i]))
            throw InvalidSpecError("TECMap: epochs must be strictly increasing");
    if (vtec.size() != n_epochs() * n_lat() * n_lon())
        throw InvalidSpecError("TECMap: value count does not match grid dimensions");
    for (double v : vtec)
        if (!std::isfinite(v)) throw InvalidSpecError("TECMap: non-finite VTEC");
}

TECMap parse_ionex(std::istream& in, const std::string& name) {
    LineReader reader(in);
    std::string line;

    TECMap map;
    double lat1 = 0, lat2 = 0, dlat = 0;
    double lon1 = 0, lon2 = 0, dlon = 0;
    bool have_lat = false, have_lon = false, header_done = false;
    std::size_t maps_in_file = 0;

    if (!reader.next(line)) throw ParseError(name + ": empty file", 1);
    if (label_of(line) != "IONEX VERSION / TYPE")
        throw ParseError(name + ": missing IONEX VERSION / TYPE", reader.line_number());

    while (reader.next(line)) {
        std::string label = label_of(line);
        if (label == "END OF HEADER") {
            header_done = true;
            break;
        } else if (label == "MAP DIMENSION") {
            if (field_int(line, 0, 6, reader.line_number()) != 2)
                throw ParseError(name + ": only 2-dimensional maps are supported",
                                 reader.line_number());
        } else if (label == "HGT1 / HGT2 / DHGT") {
            map.height_km = field_double(line, 2, 6, reader.line_number());
        } else if (label == "BASE RADIUS") {
            map.base_radius_km = field_double(line, 2, 6, reader.line_number());
        } else if (label == "LAT1 / LAT2 / DLAT") {
            lat1 = field_double(line, 2, 6, reader.line_number());
            lat2 = field_double(line, 8, 6, reader.line_number());
            dlat = field_double(line, 14, 6, reader.line_number());
            have_lat = true;
        } else if (label == "LON1 / LON2 / DLON") {
            lon1 = field_double(line, 2, 6, reader.line_number());
            lon2 = field_double(line, 8, 6, reader.line_number());
            dlon = field_double(line, 14, 6, reader.line_number());
            have_lon = true;
        } else if (label == "EXPONENT") {
            map.exponent = field_int(line, 0, 6, reader.line_number());
        } else if (label == "# OF MAPS IN FILE") {
            maps_in_file = static_cast<std::size_t>(field_int(line, 0, 6, reader.line_number()));
        }
    }
    if (!header_done) throw ParseError(name + ": missing END OF HEADER", reader.line_number());
    if (!have_lat || !have_lon)
        throw ParseError(name + ": header lacks LAT/LON grid definitions", reader.line_number());

    map.lat_deg = grid_from_range(lat1, lat2, dlat, reader.line_number());
    map.lon_deg = grid_from_range(lon1, lon2, dlon, reader.line_number());
    if (map.lat_deg.size() > 1 && dlat > 0)
        throw ParseError(name + ": latitude grid must descend", reader.line_number());

    const double scale = std::pow(10.0, map.exponent);
    const std::size_t nlat = map.lat_deg.size();
    const std::size_t nlon = map.lon_deg.size();

    while (reader.next(line)) {
        std::string label = label_of(line);
        if (label == "START OF RMS MAP" || label == "START OF HEIGHT MAP") {
            // skip to the matching end
            std::string end_label = (label == "START OF RMS MAP") ? "END OF RMS MAP"
                                                                  : "END OF HEIGHT MAP";
            while (reader.next(line)) {
                if (label_of(line) == end_label) break;
            }
            continue;
        }
        if (label == "END OF FILE") break;
        if (label != "START OF TEC MAP") continue;

        if (!reader.next(line) || label_of(line) != "EPOCH OF CURRENT MAP")
            throw ParseError(name + ": expected EPOCH OF CURRENT MAP", reader.line_number());
        map.epochs.push_back(epoch_field(line, reader.line_number()));

        std::size_t rows_seen = 0;
        std::vector<double> block(nlat * nlon, 0.0);
        while (true) {
            if (!reader.next(line))
                throw ParseError(name + ": truncated TEC map", reader.line_number());
            label = label_of(line);
            if (label == "END OF TEC MAP") break;
            if (label != "LAT/LON1/LON2/DLON/H")
                throw ParseError(name + ": expected LAT/LON1/LON2/DLON/H, got '" + label + "'",
                                 reader.line_number());
            double lat = field_double(line, 2, 6, reader.line_number());
            auto it = std::find_if(map.lat_deg.begin(), map.lat_deg.end(),
                                   [&](double g) { return std::abs(g - lat) < 1e-6; });
            if (it == map.lat_deg.end())
                throw ParseError(name + ": latitude " + std::to_string(lat) +
                                     " is not on the header grid",
                                 reader.line_number());
            std::size_t ilat = static_cast<std::size_t>(it - map.lat_deg.begin());

            for (std::size_t read = 0; read < nlon;) {
                if (!reader.next(line))
                    throw ParseError(name + ": truncated TEC row", reader.line_number());
                std::size_t in_line = std::min<std::size_t>(16, nlon - read);
                for (std::size_t j = 0; j < in_line; ++j) {
                    double raw = field_double(line, j * 5, 5, reader.line_number());
                    block[ilat * nlon + read + j] = raw * scale;
                }
                read += in_line;
            }
            ++rows_seen;
        }
        if (rows_seen != nlat)
            throw ParseError(name + ": TEC map has " + std::to_string(rows_seen) +
                                 " latitude rows, header grid has " + std::to_string(nlat),
                             reader.line_number());
        map.vtec.insert(map.vtec.end(), block.begin(), block.end());
    }

    if (map.epochs.empty()) throw ParseError(name + ": no TEC MAP blocks", reader.line_number());
    if (maps_in_file != 0 && maps_in_file != map.epochs.size())
        throw ParseError(name + ": header announces " + std::to_string(maps_in_file) +
                             " maps, file contains " + std::to_string(map.epochs.size()),
                         reader.line_number());

    for (std::size_t i = 0; i < map.vtec.size(); ++i)
        if (map.vtec[i] < 0.0) map.negative_cells.push_back(i);

    map.validate();
    return map;
}

TECMap parse_ionex_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    return parse_ionex(in, path.string());
}

namespace {

std::string padded(const std::string& body, const std::string& label) {
    std::string line = body;
    if (line.size() < 60) line.resize(60, ' ');
    return line + label;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string epoch_line(const Epoch& e) {
    int y, mo, d;
    mjd_to_calendar(e.mjd, y, mo, d);
    int sod = static_cast<int>(std::lround(e.sod));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6d%6d%6d%6d%6d%6d", y, mo, d, sod / 3600,
                  (sod % 3600) / 60, sod % 60);
    return buf;
}

} // namespace

void write_ionex(std::ostream& out, const TECMap& map) {
    map.validate();
    const double scale = std::pow(10.0, map.exponent);

    out << padded("     1.0            IONOSPHERE MAPS     GNSS", "IONEX VERSION / TYPE") << '\n';
    out << padded("satft               satft", "PGM / RUN BY / DATE") << '\n';
    out << padded(epoch_line(map.epochs.front()), "EPOCH OF FIRST MAP") << '\n';
    out << padded(epoch_line(map.epochs.back()), "EPOCH OF LAST MAP") << '\n';
    double interval = map.epochs.size() > 1 ? map.epochs[1] - map.epochs[0] : 0.0;
    out << padded(fmt("%6.0f", interval), "INTERVAL") << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6zu", map.n_epochs());
    out << padded(buf, "# OF MAPS IN FILE") << '\n';
    out << padded("  NONE", "MAPPING FUNCTION") << '\n';
    out << padded(fmt("%8.1f", map.base_radius_km), "BASE RADIUS") << '\n';
    out << padded("     2", "MAP DIMENSION") << '\n';
    out << padded("  " + fmt("%6.1f", map.height_km) + fmt("%6.1f", map.height_km) +
                      fmt("%6.1f", 0.0),
                  "HGT1 / HGT2 / DHGT")
        << '\n';
    double dlat = map.n_lat() > 1 ? map.lat_deg[1] - map.lat_deg[0] : -1.0;
    out << padded("  " + fmt("%6.1f", map.lat_deg.front()) + fmt("%6.1f", map.lat_deg.back()) +
                      fmt("%6.1f", dlat),
                  "LAT1 / LAT2 / DLAT")
        << '\n';
    double dlon = map.n_lon() > 1 ? map.lon_deg[1] - map.lon_deg[0] : 1.0;
    out << padded("  " + fmt("%6.1f", map.lon_deg.front()) + fmt("%6.1f", map.lon_deg.back()) +
                      fmt("%6.1f", dlon),
                  "LON1 / LON2 / DLON")
        << '\n';
    std::snprintf(buf, sizeof buf, "%6d", map.exponent);
    out << padded(buf, "EXPONENT") << '\n';
    out << padded("", "END OF HEADER") << '\n';

    for (std::size_t e = 0; e < map.n_epochs(); ++e) {
        std::snprintf(buf, sizeof buf, "%6zu", e + 1);
        out << padded(buf, "START OF TEC MAP") << '\n';
        out << padded(epoch_line(map.epochs[e]), "EPOCH OF CURRENT MAP") << '\n';
        for (std::size_t ilat = 0; ilat < map.n_lat(); ++ilat) {
            out << padded("  " + fmt("%6.1f", map.lat_deg[ilat]) +
                              fmt("%6.1f", map.lon_deg.front()) +
                              fmt("%6.1f", map.lon_deg.back()) + fmt("%6.1f", dlon) +
                              fmt("%6.1f", map.height_km),
                          "LAT/LON1/LON2/DLON/H")
                << '\n';
            std::string row;
            for (std::size_t ilon = 0; ilon < map.n_lon(); ++ilon) {
                long cell = std::lround(map.at(e, ilat, ilon) / scale);
                cell = std::clamp(cell, -9999L, 99999L); // I5 cell width
                std::snprintf(buf, sizeof buf, "%5ld", cell);
                row += buf;
                if ((ilon + 1) % 16 == 0 || ilon + 1 == map.n_lon()) {
                    out << row << '\n';
                    row.clear();
                }
            }
        }
        std::snprintf(buf, sizeof buf, "%6zu", e + 1);
        out << padded(buf, "END OF TEC MAP") << '\n';
    }
    out << padded("", "END OF FILE") << '\n';
}

void write_ionex_file(const std::filesystem::path& path, const TECMap& map) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    write_ionex(out, map);
}

double interpolate_vtec(const TECMap& map, double lat_deg, double lon_deg, const Epoch& epoch) {
    if (map.epochs.empty() || map.lat_deg.empty() || map.lon_deg.empty())
        throw InvalidSpecError("interpolate_vtec: empty map");
    if (epoch < map.epochs.front() || map.epochs.back() < epoch)
        throw CoverageError("epoch " + epoch.str() + " outside map span [" +
                            map.epochs.front().str() + ", " + map.epochs.back().str() + "]");
    if (lat_deg > map.lat_deg.front() || lat_deg < map.lat_deg.back())
        throw CoverageError("latitude " + std::to_string(lat_deg) + " outside grid [" +
                            std::to_string(map.lat_deg.back()) + ", " +
                            std::to_string(map.lat_deg.front()) + "]");
    if (lon_deg < map.lon_deg.front() || lon_deg > map.lon_deg.back())
        throw CoverageError("longitude " + std::to_string(lon_deg) + " outside grid [" +
                            std::to_string(map.lon_deg.front()) + ", " +
                            std::to_string(map.lon_deg.back()) + "]");

    // bracketing epochs
    std::size_t e1 = 0;
    while (e1 + 1 < map.n_epochs() && !(epoch < map.epochs[e1 + 1])) ++e1;
    std::size_t e2 = std::min(e1 + 1, map.n_epochs() - 1);
    double tw = 0.0;
    if (e2 > e1) {
        double span = map.epochs[e2] - map.epochs[e1];
        tw = (epoch - map.epochs[e1]) / span;
    }

    // bracketing latitude band (descending grid): lat in [lat[la1+1], lat[la1]]
    std::size_t la1 = 0;
    while (la1 + 2 < map.n_lat() && lat_deg < map.lat_deg[la1 + 1]) ++la1;
    std::size_t la2 = std::min(la1 + 1, map.n_lat() - 1);
    double lw = 0.0;
    if (la2 > la1)
        lw = (lat_deg - map.lat_deg[la1]) / (map.lat_deg[la2] - map.lat_deg[la1]);

    // bracketing longitude band (ascending grid)
    std::size_t lo1 = 0;
    while (lo1 + 2 < map.n_lon() && lon_deg >= map.lon_deg[lo1 + 1]) ++lo1;
    std::size_t lo2 = std::min(lo1 + 1, map.n_lon() - 1);
    double ow = 0.0;
    if (lo2 > lo1) ow = (lon_deg - map.lon_deg[lo1]) / (map.lon_deg[lo2] - map.lon_deg[lo1]);

    auto bilinear = [&](std::size_t e) {
        double v11 = map.at(e, la1, lo1), v12 = map.at(e, la1, lo2);
        double v21 = map.at(e, la2, lo1), v22 = map.at(e, la2, lo2);
        return (1 - lw) * ((1 - ow) * v11 + ow * v12) + lw * ((1 - ow) * v21 + ow * v22);
    };

    double v1 = bilinear(e1);
    if (e2 == e1 || tw == 0.0) return v1;
    return (1 - tw) * v1 + tw * bilinear(e2);
}

void write_tecmap_csv(std::ostream& out, const TECMap& map) {
    out << "mjd,sod,lat_deg,lon_deg,vtec_tecu\n";
    for (std::size_t e = 0; e < map.n_epochs(); ++e)
        for (std::size_t ilat = 0; ilat < map.n_lat(); ++ilat)
            for (std::size_t ilon = 0; ilon < map.n_lon(); ++ilon)
                out << map.epochs[e].mjd << ',' << format_g17(map.epochs[e].sod) << ','
                    << format_g17(map.lat_deg[ilat]) << ',' << format_g17(map.lon_deg[ilon])
                    << ',' << format_g17(map.at(e, ilat, ilon)) << '\n';
}

} // namespace satft
