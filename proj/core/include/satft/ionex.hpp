#ifndef SATFT_IONEX_HPP
#define SATFT_IONEX_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "satft/epoch.hpp"

namespace satft {

/// Gridded vertical TEC over epochs x latitude x longitude, as read from an
/// IONEX 1.0 file. Latitudes descend, longitudes ascend (the usual global
/// map layout); values are in TECU after applying the header EXPONENT.
/// Negative cells are kept but their flat indices are recorded.
struct TECMap {
    std::vector<Epoch> epochs;
    std::vector<double> lat_deg; // strictly descending
    std::vector<double> lon_deg; // strictly ascending
    std::vector<double> vtec;    // epochs * lat * lon, lon fastest
    int exponent = -1;
    double base_radius_km = 6371.0;
    double height_km = 450.0;
    std::vector<std::size_t> negative_cells;

    std::size_t n_epochs() const { return epochs.size(); }
    std::size_t n_lat() const { return lat_deg.size(); }
    std::size_t n_lon() const { return lon_deg.size(); }

    double at(std::size_t e, std::size_t ilat, std::size_t ilon) const {
        return vtec[(e * n_lat() + ilat) * n_lon() + ilon];
    }

    void validate() const;
};

/// Parses an IONEX 1.0 stream (TEC MAP blocks only; RMS/height maps are
/// skipped). Throws ParseError with the offending line number on malformed
/// headers, grid/label mismatches or truncated maps.
TECMap parse_ionex(std::istream& in, const std::string& name = "<stream>");
TECMap parse_ionex_file(const std::filesystem::path& path);

/// Writes a TECMap back out in IONEX 1.0 layout. Mainly a round-trip test
/// and fixture-generation utility; values are clamped to the I5 cell width.
void write_ionex(std::ostream& out, const TECMap& map);
void write_ionex_file(const std::filesystem::path& path, const TECMap& map);

/// Bilinear in latitude/longitude inside the grid hull, linear in time
/// between bracketing maps. No extrapolation: out-of-hull or out-of-span
/// queries throw CoverageError describing the valid range.
double interpolate_vtec(const TECMap& map, double lat_deg, double lon_deg, const Epoch& epoch);

/// CSV dump of the map: header "mjd,sod,lat_deg,lon_deg,vtec_tecu".
void write_tecmap_csv(std::ostream& out, const TECMap& map);

} // namespace satft

#endif
