#include "satft/series.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "satft/csv.hpp"
#include "satft/errors.hpp"

namespace satft {

double PhaseSeries::sample_at(double t) const {
    if (x.empty()) throw InvalidSpecError("sample_at on empty series");
    if (x.size() == 1) return x[0];
    double u = t / dt;
    auto n = static_cast<std::ptrdiff_t>(x.size());
    auto i = static_cast<std::ptrdiff_t>(std::floor(u));
    if (i < 0) i = 0;                 // extend first interval backwards
    if (i > n - 2) i = n - 2;         // extend last interval forwards
    double frac = u - static_cast<double>(i);
    return x[i] + (x[i + 1] - x[i]) * frac;
}

void PhaseSeries::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidSpecError("PhaseSeries: sample interval must be positive");
    if (x.empty()) throw InvalidSpecError("PhaseSeries: empty");
    for (double v : x)
        if (!std::isfinite(v)) throw InvalidSpecError("PhaseSeries: non-finite sample");
}

std::string technique_name(Technique t) {
    switch (t) {
        case Technique::raw: return "raw";
        case Technique::twcp: return "twcp";
        case Technique::ppp: return "ppp";
        case Technique::ippp: return "ippp";
        case Technique::double_diff: return "dd";
    }
    return "raw";
}

Technique technique_from_name(std::string_view name) {
    if (name == "raw") return Technique::raw;
    if (name == "twcp") return Technique::twcp;
    if (name == "ppp") return Technique::ppp;
    if (name == "ippp") return Technique::ippp;
    if (name == "dd") return Technique::double_diff;
    throw InvalidSpecError("unknown technique tag: '" + std::string(name) + "'");
}

std::size_t TimeDiffSeries::size() const {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.values.size();
    return n;
}

Epoch TimeDiffSeries::first_epoch() const {
    if (segments.empty()) throw InvalidSpecError("empty series has no first epoch");
    return segments.front().start;
}

Epoch TimeDiffSeries::last_epoch() const {
    if (segments.empty()) throw InvalidSpecError("empty series has no last epoch");
    const Segment& s = segments.back();
    return s.start.advanced(static_cast<double>(s.values.size() - 1) * dt);
}

double TimeDiffSeries::span_seconds() const { return last_epoch() - first_epoch(); }

double TimeDiffSeries::rel_time(std::size_t seg, std::size_t i) const {
    return (segments[seg].start - segments[0].start) + static_cast<double>(i) * dt;
}

void TimeDiffSeries::append(const Epoch& e, double value) {
    if (!segments.empty()) {
        const Segment& s = segments.back();
        Epoch last = s.start.advanced(static_cast<double>(s.values.size() - 1) * dt);
        double gap = e - last;
        if (gap <= 0.0)
            throw InvalidSpecError("samples must be strictly time-ordered (at " + e.str() + ")");
        if (std::abs(gap - dt) <= 1e-6 * dt) {
            segments.back().values.push_back(value);
            return;
        }
        // anything other than exactly one step starts a new segment
    }
    segments.push_back(Segment{e, {value}});
}

TimeDiffSeries TimeDiffSeries::uniform(Epoch start, double dt, std::vector<double> values,
                                       Technique technique) {
    TimeDiffSeries out;
    out.dt = dt;
    out.technique = technique;
    out.segments.push_back(Segment{start, std::move(values)});
    return out;
}

std::vector<double> TimeDiffSeries::flattened() const {
    std::vector<double> out;
    out.reserve(size());
    for (const auto& s : segments) out.insert(out.end(), s.values.begin(), s.values.end());
    return out;
}

void TimeDiffSeries::validate() const {
    if (!(dt > 0.0)) throw InvalidSpecError("TimeDiffSeries: sample interval must be positive");
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (segments[k].values.empty())
            throw InvalidSpecError("TimeDiffSeries: empty segment");
        if (k > 0) {
            Epoch prev_end = segments[k - 1].start.advanced(
                static_cast<double>(segments[k - 1].values.size() - 1) * dt);
            if (!(prev_end < segments[k].start))
                throw InvalidSpecError("TimeDiffSeries: segments overlap or are unordered");
        }
        for (double v : segments[k].values)
            if (!std::isfinite(v)) throw InvalidSpecError("TimeDiffSeries: non-finite sample");
    }
}

// ---- CSV ------------------------------------------------------------------

namespace {

void write_epoch_fields(std::string& row, const Epoch& e) {
    row += std::to_string(e.mjd);
    row += ',';
    row += format_g17(e.sod);
}

template <typename RowFn>
void read_rows(std::istream& in, const std::string& name, const char* expected_header,
               std::size_t min_fields, RowFn&& fn) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line))
        throw ParseError(name + ": empty file", 1);
    if (split_csv(line).empty() || line.substr(0, std::string(expected_header).size()) != expected_header)
        throw ParseError(name + ": expected header '" + expected_header + "'", 1);
    while (reader.next(line)) {
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() < min_fields)
            throw ParseError(name + ": expected at least " + std::to_string(min_fields) +
                                 " fields",
                             reader.line_number());
        fn(fields, reader.line_number());
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    return in;
}

} // namespace

void write_phase_csv(std::ostream& out, const PhaseSeries& s) {
    out << "mjd,sod,x_seconds\n";
    std::string row;
    for (std::size_t i = 0; i < s.size(); ++i) {
        row.clear();
        write_epoch_fields(row, s.epoch_at(i));
        row += ',';
        row += format_g17(s.x[i]);
        row += '\n';
        out << row;
    }
}

void write_phase_csv(const std::filesystem::path& path, const PhaseSeries& s) {
    auto out = open_out(path);
    write_phase_csv(out, s);
}

PhaseSeries read_phase_csv(std::istream& in, const std::string& name) {
    PhaseSeries s;
    std::vector<Epoch> epochs;
    read_rows(in, name, "mjd,sod,x_seconds", 3, [&](const auto& f, std::size_t ln) {
        Epoch e(static_cast<std::int32_t>(parse_long(f[0], ln)), parse_double(f[1], ln));
        epochs.push_back(e);
        s.x.push_back(parse_double(f[2], ln));
    });
    if (epochs.empty()) throw ParseError(name + ": no samples", 2);
    s.start = epochs.front();
    s.dt = epochs.size() > 1 ? epochs[1] - epochs[0] : 1.0;
    if (!(s.dt > 0)) throw Error(name + ": epochs not increasing");
    for (std::size_t i = 1; i < epochs.size(); ++i) {
        double expect = static_cast<double>(i) * s.dt;
        if (std::abs((epochs[i] - s.start) - expect) > 1e-6 * s.dt)
            throw Error(name + ": non-uniform sampling at " + epochs[i].str());
    }
    return s;
}

PhaseSeries read_phase_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_phase_csv(in, path.string());
}

void write_timediff_csv(std::ostream& out, const TimeDiffSeries& s) {
    out << "mjd,sod,dt_seconds,technique,flags\n";
    const std::string tech = technique_name(s.technique);
    const char* flags = s.iono_corrected ? "I" : "-";
    std::string row;
    for (const auto& seg : s.segments) {
        for (std::size_t i = 0; i < seg.values.size(); ++i) {
            row.clear();
            write_epoch_fields(row, seg.start.advanced(static_cast<double>(i) * s.dt));
            row += ',';
            row += format_g17(seg.values[i]);
            row += ',';
            row += tech;
            row += ',';
            row += flags;
            row += '\n';
            out << row;
        }
    }
}

void write_timediff_csv(const std::filesystem::path& path, const TimeDiffSeries& s) {
    auto out = open_out(path);
    write_timediff_csv(out, s);
}

TimeDiffSeries read_timediff_csv(std::istream& in, const std::string& name) {
    TimeDiffSeries s;
    std::vector<Epoch> epochs;
    std::vector<double> values;
    read_rows(in, name, "mjd,sod,dt_seconds", 5, [&](const auto& f, std::size_t ln) {
        epochs.emplace_back(static_cast<std::int32_t>(parse_long(f[0], ln)),
                            parse_double(f[1], ln));
        values.push_back(parse_double(f[2], ln));
        s.technique = technique_from_name(f[3]);
        s.iono_corrected = (f[4] == "I");
    });
    if (epochs.empty()) throw ParseError(name + ": no samples", 2);
    // Sample interval: smallest positive spacing present.
    double dt = 0.0;
    for (std::size_t i = 1; i < epochs.size(); ++i) {
        double d = epochs[i] - epochs[i - 1];
        if (d > 0 && (dt == 0.0 || d < dt)) dt = d;
    }
    s.dt = dt > 0 ? dt : 1.0;
    for (std::size_t i = 0; i < epochs.size(); ++i) s.append(epochs[i], values[i]);
    s.validate();
    return s;
}

TimeDiffSeries read_timediff_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_timediff_csv(in, path.string());
}

void write_session_csv(std::ostream& out, const TimeDiffSeries& s) {
    out << "mjd,sod,value\n";
    std::string row;
    for (const auto& seg : s.segments) {
        for (std::size_t i = 0; i < seg.values.size(); ++i) {
            row.clear();
            write_epoch_fields(row, seg.start.advanced(static_cast<double>(i) * s.dt));
            row += ',';
            row += format_g17(seg.values[i]);
            row += '\n';
            out << row;
        }
    }
}

void write_session_csv(const std::filesystem::path& path, const TimeDiffSeries& s) {
    auto out = open_out(path);
    write_session_csv(out, s);
}

TimeDiffSeries read_session_csv(std::istream& in, const std::string& name) {
    TimeDiffSeries s;
    std::vector<Epoch> epochs;
    std::vector<double> values;
    read_rows(in, name, "mjd,sod,value", 3, [&](const auto& f, std::size_t ln) {
        epochs.emplace_back(static_cast<std::int32_t>(parse_long(f[0], ln)),
                            parse_double(f[1], ln));
        values.push_back(parse_double(f[2], ln));
    });
    if (epochs.empty()) throw ParseError(name + ": no samples", 2);
    double dt = 0.0;
    for (std::size_t i = 1; i < epochs.size(); ++i) {
        double d = epochs[i] - epochs[i - 1];
        if (d > 0 && (dt == 0.0 || d < dt)) dt = d;
    }
    s.dt = dt > 0 ? dt : 1.0;
    for (std::size_t i = 0; i < epochs.size(); ++i) s.append(epochs[i], values[i]);
    s.validate();
    return s;
}

TimeDiffSeries read_session_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_session_csv(in, path.string());
}

} // namespace satft
