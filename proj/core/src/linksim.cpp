#include "satft/linksim.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

void CarrierPlan::validate() const {
    if (!(f_down_hz > 0.0) || !(f_up_hz > f_down_hz))
        throw InvalidSpecError("CarrierPlan: need f_up > f_down > 0");
}

void SatelliteConfig::validate() const {
    if (!(range_a_m > 0.0) || !(range_b_m > 0.0))
        throw InvalidSpecError("SatelliteConfig: slant ranges must be positive");
    if (oscillation.amplitude_m < 0.0)
        throw InvalidSpecError("SatelliteConfig: oscillation amplitude must be >= 0");
    if (!(oscillation.period_s > 0.0))
        throw InvalidSpecError("SatelliteConfig: oscillation period must be positive");
    lo_noise.validate();
}

double TecSource::vtec_at(double lat_deg, double lon_deg, const Epoch& e) const {
    if (map == nullptr) return constant_tecu;
    return interpolate_vtec(*map, lat_deg, lon_deg, e);
}

void StationConfig::validate() const {
    if (!(elevation_deg > 0.0) || elevation_deg > 90.0)
        throw InvalidSpecError("StationConfig: elevation must be in (0, 90] degrees");
    if (meas_noise_s < 0.0)
        throw InvalidSpecError("StationConfig: measurement noise must be >= 0");
    if (!std::isfinite(path_delay_s))
        throw InvalidSpecError("StationConfig: non-finite path delay");
}

void FourPhaseSet::validate() const {
    plan.validate();
    const std::size_t n = epochs.size();
    if (l_aa.size() != n || l_ab.size() != n || l_ba.size() != n || l_bb.size() != n)
        throw InvalidSpecError("FourPhaseSet: phase vectors must match the epoch vector");
    if (n == 0) throw InvalidSpecError("FourPhaseSet: empty");
    double min_dt = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double d = epochs[i] - epochs[i - 1];
        if (!(d > 0.0)) throw InvalidSpecError("FourPhaseSet: epochs must strictly increase");
        if (min_dt == 0.0 || d < min_dt) min_dt = d;
    }
    const std::vector<double>* phases[] = {&l_aa, &l_ab, &l_ba, &l_bb};
    for (const auto* p : phases)
        for (double v : *p)
            if (!std::isfinite(v)) throw InvalidSpecError("FourPhaseSet: non-finite phase");
    if (n > 1) {
        // continuity: tracked carrier phase never jumps by more than half a
        // sample of carrier cycles between adjacent epochs
        double bound = 0.5 * plan.f_up_hz * min_dt;
        for (const auto* p : phases)
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs((*p)[i] - (*p)[i - 1]) > bound)
                    throw InvalidSpecError("FourPhaseSet: phase discontinuity at " +
                                           epochs[i].str());
    }
}

double slant_factor(double elevation_deg, double shell_height_m) {
    double el = elevation_deg * M_PI / 180.0;
    double s = kEarthRadiusM / (kEarthRadiusM + shell_height_m) * std::cos(el);
    return 1.0 / std::sqrt(1.0 - s * s);
}

double iono_phase_delay_s(double tecu, double f_hz) {
    return kIonoCoeff * kTecuToElectronsPerM2 * tecu / (kSpeedOfLight * f_hz * f_hz);
}

namespace {

struct StationPath {
    const StationConfig* cfg;
    double slant;       // obliquity factor, fixed per station
    double range0_m;    // nominal slant range
    // per-epoch cache
    double vtec_tecu = 0.0;

    // Signed one-way delays at the given oscillation offset (the carrier
    // phase is advanced by the ionosphere, so the dispersive term enters
    // with a negative sign).
    double up_delay(double osc_m, double f_up) const {
        return (range0_m + osc_m) / kSpeedOfLight + cfg->path_delay_s -
               iono_phase_delay_s(vtec_tecu * slant, f_up);
    }
    double down_delay(double osc_m, double f_down) const {
        return (range0_m + osc_m) / kSpeedOfLight + cfg->path_delay_s -
               iono_phase_delay_s(vtec_tecu * slant, f_down);
    }
};

} // namespace

FourPhaseSet simulate_four_phases(const PhaseSeries& clock_a, const PhaseSeries& clock_b,
                                  const SatelliteConfig& sat, const StationConfig& station_a,
                                  const StationConfig& station_b, const CarrierPlan& plan,
                                  std::uint64_t seed) {
    clock_a.validate();
    clock_b.validate();
    sat.validate();
    station_a.validate();
    station_b.validate();
    plan.validate();
    if (clock_a.start != clock_b.start || clock_a.dt != clock_b.dt ||
        clock_a.size() != clock_b.size())
        throw AlignmentError("simulate_four_phases: clock series must share their epoch grid");

    const std::size_t n = clock_a.size();
    const double dt = clock_a.dt;
    const double f_up = plan.f_up_hz;
    const double f_down = plan.f_down_hz;

    // Transponder LO phase noise, as a clock series started two samples
    // early so evaluation at t - path_delay never leaves the record.
    const double lo_lead = 2.0 * dt;
    PhaseSeries lo;
    const bool lo_noisy = !sat.lo_noise.all_zero();
    if (lo_noisy)
        lo = synthesize_phase(sat.lo_noise, n + 2, dt, seed ^ 0x6c6f6e6f69736575ull,
                              clock_a.start.advanced(-lo_lead));

    std::seed_seq sa{static_cast<std::uint32_t>(seed), 0xa001u};
    std::seed_seq sb{static_cast<std::uint32_t>(seed), 0xb002u};
    std::mt19937_64 rng_a(sa), rng_b(sb);
    std::normal_distribution<double> gauss(0.0, 1.0);

    StationPath path_a{&station_a, slant_factor(station_a.elevation_deg), sat.range_a_m};
    StationPath path_b{&station_b, slant_factor(station_b.elevation_deg), sat.range_b_m};

    FourPhaseSet out;
    out.plan = plan;
    out.epochs.resize(n);
    out.l_aa.resize(n);
    out.l_ab.resize(n);
    out.l_ba.resize(n);
    out.l_bb.resize(n);

    const double omega = 2.0 * M_PI / sat.oscillation.period_s;

    auto oscillation_at = [&](double t) {
        return sat.oscillation.amplitude_m *
               std::sin(omega * t + sat.oscillation.phase_rad);
    };

    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        const Epoch epoch = clock_a.epoch_at(k);
        out.epochs[k] = epoch;

        path_a.vtec_tecu = station_a.vtec.vtec_at(station_a.lat_deg, station_a.lon_deg, epoch);
        path_b.vtec_tecu = station_b.vtec.vtec_at(station_b.lat_deg, station_b.lon_deg, epoch);

        const double osc_rx = oscillation_at(t);

        // One measurement: signal of station `tx` received at station `rx`
        // at ideal time t. Downlink delay is evaluated at the receive
        // epoch, the uplink delay at the once-iterated transponder epoch.
        auto measure = [&](const StationPath& tx, const PhaseSeries& clock_tx,
                           const StationPath& rx, const PhaseSeries& clock_rx) {
            const double d_down = rx.down_delay(osc_rx, f_down);
            const double t_sat = t - d_down;
            const double d_up = tx.up_delay(oscillation_at(t_sat), f_up);
            const double t_tx = t_sat - d_up;

            double phase = -f_up * d_up - f_down * d_down;
            phase += f_up * clock_tx.sample_at(t_tx);
            phase -= f_down * clock_rx.sample_at(t);
            if (lo_noisy) phase -= plan.f_lo_hz() * lo.sample_at(t_sat + lo_lead);
            return phase;
        };

        out.l_aa[k] = measure(path_a, clock_a, path_a, clock_a);
        out.l_ab[k] = measure(path_a, clock_a, path_b, clock_b);
        out.l_ba[k] = measure(path_b, clock_b, path_a, clock_a);
        out.l_bb[k] = measure(path_b, clock_b, path_b, clock_b);

        // carrier-tracking noise on the remote signals
        if (station_b.meas_noise_s > 0.0)
            out.l_ab[k] += f_up * station_b.meas_noise_s * gauss(rng_b);
        if (station_a.meas_noise_s > 0.0)
            out.l_ba[k] += f_up * station_a.meas_noise_s * gauss(rng_a);
    }
    return out;
}

FourPhaseSet apply_snr_event(FourPhaseSet phases, const Epoch& at, double excursion_s) {
    if (phases.epochs.empty()) throw InvalidSpecError("apply_snr_event: empty phase set");
    if (at < phases.epochs.front() || phases.epochs.back() < at)
        throw CoverageError("excursion epoch " + at.str() + " outside the series span [" +
                            phases.epochs.front().str() + ", " + phases.epochs.back().str() +
                            "]");
    if (excursion_s == 0.0) return phases;

    const double step = phases.plan.f_up_hz * excursion_s;
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (phases.epochs[i] < at) continue;
        phases.l_ab[i] += step;
        phases.l_bb[i] -= step;
    }
    return phases;
}

void write_fourphase_csv(std::ostream& out, const FourPhaseSet& p) {
    out << "mjd,sod,L_AA,L_AB,L_BA,L_BB\n";
    std::string row;
    for (std::size_t i = 0; i < p.size(); ++i) {
        row.clear();
        row += std::to_string(p.epochs[i].mjd);
        row += ',';
        row += format_g17(p.epochs[i].sod);
        row += ',';
        row += format_g17(p.l_aa[i]);
        row += ',';
        row += format_g17(p.l_ab[i]);
        row += ',';
        row += format_g17(p.l_ba[i]);
        row += ',';
        row += format_g17(p.l_bb[i]);
        row += '\n';
        out << row;
    }
}

void write_fourphase_csv(const std::filesystem::path& path, const FourPhaseSet& p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    write_fourphase_csv(out, p);
}

FourPhaseSet read_fourphase_csv(std::istream& in, const CarrierPlan& plan,
                                const std::string& name) {
    FourPhaseSet p;
    p.plan = plan;
    LineReader reader(in);
    std::string line;
    if (!reader.next(line) || line.rfind("mjd,sod,L_AA", 0) != 0)
        throw ParseError(name + ": expected header 'mjd,sod,L_AA,L_AB,L_BA,L_BB'", 1);
    while (reader.next(line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() < 6) throw ParseError(name + ": expected 6 fields", reader.line_number());
        std::size_t ln = reader.line_number();
        p.epochs.emplace_back(static_cast<std::int32_t>(parse_long(f[0], ln)),
                              parse_double(f[1], ln));
        p.l_aa.push_back(parse_double(f[2], ln));
        p.l_ab.push_back(parse_double(f[3], ln));
        p.l_ba.push_back(parse_double(f[4], ln));
        p.l_bb.push_back(parse_double(f[5], ln));
    }
    if (p.epochs.empty()) throw ParseError(name + ": no samples", 2);
    return p;
}

FourPhaseSet read_fourphase_csv(const std::filesystem::path& path, const CarrierPlan& plan) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    return read_fourphase_csv(in, plan, path.string());
}

} // namespace satft
