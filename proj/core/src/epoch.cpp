#include "satft/epoch.hpp"

#include <cmath>
#include <cstdio>

namespace satft {

Epoch::Epoch(std::int32_t mjd_days, double seconds_of_day)
    : mjd(mjd_days), sod(seconds_of_day) {
    if (sod >= 0.0 && sod < kSecondsPerDay) return;
    double days = std::floor(sod / kSecondsPerDay);
    mjd += static_cast<std::int32_t>(days);
    sod -= days * kSecondsPerDay;
    // floor() can leave sod == 86400 when the input was a hair below a
    // day boundary; fold it forward.
    if (sod >= kSecondsPerDay) {
        sod -= kSecondsPerDay;
        ++mjd;
    }
    if (sod < 0.0) sod = 0.0;
}

Epoch Epoch::advanced(double seconds) const {
    // Split into whole days plus remainder before touching sod so that
    // multi-day offsets never push a double past its integer-exact range.
    double days = std::floor(seconds / kSecondsPerDay);
    double rem = seconds - days * kSecondsPerDay;
    return Epoch(mjd + static_cast<std::int32_t>(days), sod + rem);
}

std::string Epoch::str() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%d/%.6f", static_cast<int>(mjd), sod);
    return buf;
}

double operator-(const Epoch& a, const Epoch& b) {
    return static_cast<double>(a.mjd - b.mjd) * kSecondsPerDay + (a.sod - b.sod);
}

bool operator==(const Epoch& a, const Epoch& b) {
    return a.mjd == b.mjd && a.sod == b.sod;
}

bool operator<(const Epoch& a, const Epoch& b) {
    if (a.mjd != b.mjd) return a.mjd < b.mjd;
    return a.sod < b.sod;
}

long long grid_index(const Epoch& e, double step_s) {
    const Epoch origin{50000, 0.0};
    return std::llround((e - origin) / step_s);
}

std::int32_t calendar_to_mjd(int year, int month, int day) {
    // Fliegel-Van Flandern, valid for the Gregorian calendar.
    int a = (14 - month) / 12;
    int y = year + 4800 - a;
    int m = month + 12 * a - 3;
    long jdn = day + (153L * m + 2) / 5 + 365L * y + y / 4 - y / 100 + y / 400 - 32045;
    return static_cast<std::int32_t>(jdn - 2400001L);
}

void mjd_to_calendar(std::int32_t mjd, int& year, int& month, int& day) {
    long jdn = static_cast<long>(mjd) + 2400001L;
    long f = jdn + 1401 + (((4 * jdn + 274277) / 146097) * 3) / 4 - 38;
    long e = 4 * f + 3;
    long g = (e % 1461) / 4;
    long h = 5 * g + 2;
    day = static_cast<int>((h % 153) / 5 + 1);
    month = static_cast<int>((h / 153 + 2) % 12 + 1);
    year = static_cast<int>(e / 1461 - 4716 + (12 + 2 - month) / 12);
}

} // namespace satft
