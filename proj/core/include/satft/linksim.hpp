#ifndef SATFT_LINKSIM_HPP
#define SATFT_LINKSIM_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "satft/ionex.hpp"
#include "satft/noise.hpp"
#include "satft/series.hpp"

namespace satft {

/// Up/down carrier plan of the two-way link. The transponder converts by
/// mixing with a local oscillator at exactly f_up - f_down.
struct CarrierPlan {
    double f_up_hz = 14.0e9;
    double f_down_hz = 11.0e9;

    double f_lo_hz() const { return f_up_hz - f_down_hz; }
    void validate() const; // f_up > f_down > 0
};

/// Daily residual motion of the (nominally geostationary) satellite,
/// applied to both slant ranges: R_i(t) = R_i0 + A*sin(2 pi t/T + phase).
struct RangeOscillation {
    double amplitude_m = 0.0;
    double period_s = 86164.0;
    double phase_rad = 0.0;
};

struct SatelliteConfig {
    double range_a_m = 38000.0e3;
    double range_b_m = 38000.0e3;
    RangeOscillation oscillation;
    NoiseSpec lo_noise; // onboard-oscillator phase noise

    void validate() const;
};

/// Vertical TEC over a station: either a constant or a gridded map sampled
/// at the station coordinates. The map pointer is non-owning.
struct TecSource {
    double constant_tecu = 0.0;
    const TECMap* map = nullptr;

    double vtec_at(double lat_deg, double lon_deg, const Epoch& e) const;
};

struct StationConfig {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double elevation_deg = 45.0;
    TecSource vtec;
    double path_delay_s = 0.0; // troposphere + cables, non-dispersive, up and down
    /// White phase noise of the carrier tracking for the remote signal
    /// received at this station, time-equivalent at the uplink carrier.
    /// The loopback measurement shares the local chain and is taken clean.
    double meas_noise_s = 0.0;

    void validate() const; // elevation in (0, 90]
};

/// The four simultaneous carrier-phase measurements (cycles, continuous).
/// Index order of the ambiguities: AA, AB, BA, BB.
struct FourPhaseSet {
    std::vector<Epoch> epochs;
    std::vector<double> l_aa, l_ab, l_ba, l_bb;
    CarrierPlan plan;
    std::array<double, 4> ambiguity_cycles{0.0, 0.0, 0.0, 0.0};

    std::size_t size() const { return epochs.size(); }
    void validate() const;
};

/// Thin-shell ionospheric obliquity factor at the given shell height
/// (equals 1 at zenith, 1/sin(elevation) in the zero-height limit).
double slant_factor(double elevation_deg, double shell_height_m = kDefaultIonoShellHeightM);

/// One-way dispersive carrier-phase magnitude in seconds for `tecu` TECU at
/// frequency f (the phase is advanced, i.e. the signed delay is negative).
double iono_phase_delay_s(double tecu, double f_hz);

/// Simulates the two-way exchange: both stations transmit f_up carriers
/// derived from their clocks, the transponder mixes with its noisy LO, each
/// station measures its own loopback and the remote carrier against its
/// f_down reference on the shared 1 s grid of the input clock series.
///
/// Deterministic in (inputs, seed). Signal ambiguities are left at zero;
/// add integers to FourPhaseSet::ambiguity_cycles (and the corresponding
/// phase vector) to model them - the combination absorbs any constant.
FourPhaseSet simulate_four_phases(const PhaseSeries& clock_a, const PhaseSeries& clock_b,
                                  const SatelliteConfig& sat, const StationConfig& station_a,
                                  const StationConfig& station_b, const CarrierPlan& plan,
                                  std::uint64_t seed);

/// Receive-processing phase excursion at station B from `at` onward: the
/// remote and loopback phases measured at B step by +/- f_up*excursion
/// cycles, so the combined clock difference steps by exactly `excursion`.
FourPhaseSet apply_snr_event(FourPhaseSet phases, const Epoch& at, double excursion_s);

/// CSV: header "mjd,sod,L_AA,L_AB,L_BA,L_BB" (cycles).
void write_fourphase_csv(std::ostream& out, const FourPhaseSet& p);
void write_fourphase_csv(const std::filesystem::path& path, const FourPhaseSet& p);
FourPhaseSet read_fourphase_csv(std::istream& in, const CarrierPlan& plan,
                                const std::string& name = "<stream>");
FourPhaseSet read_fourphase_csv(const std::filesystem::path& path, const CarrierPlan& plan);

} // namespace satft

#endif
