#ifndef SATFT_EPOCH_HPP
#define SATFT_EPOCH_HPP

#include <cstdint>
#include <string>

#include "satft/constants.hpp"

namespace satft {

/// Time tag carried as (integer MJD, seconds of day). Keeping the day count
/// in an integer avoids the ~2 ns quantisation a plain fractional-MJD double
/// would reach after 100 days; differences and offsets stay exact well below
/// 1 ns as long as the step is an exactly representable number of seconds.
struct Epoch {
    std::int32_t mjd = 0;
    double sod = 0.0; // in [0, 86400)

    Epoch() = default;
    Epoch(std::int32_t mjd_days, double seconds_of_day);

    /// This epoch shifted by `seconds` (may be negative or span many days).
    Epoch advanced(double seconds) const;

    /// Fractional MJD, for reports and plots only (lossy).
    double to_mjd() const { return static_cast<double>(mjd) + sod / kSecondsPerDay; }

    std::string str() const;
};

/// a - b in seconds.
double operator-(const Epoch& a, const Epoch& b);

bool operator==(const Epoch& a, const Epoch& b);
bool operator<(const Epoch& a, const Epoch& b);
inline bool operator!=(const Epoch& a, const Epoch& b) { return !(a == b); }
inline bool operator>(const Epoch& a, const Epoch& b) { return b < a; }
inline bool operator<=(const Epoch& a, const Epoch& b) { return !(b < a); }
inline bool operator>=(const Epoch& a, const Epoch& b) { return !(a < b); }

/// Index of an epoch on a global grid with step `step_s`, anchored at
/// MJD 50000 so all working epochs give small exact integers. Two epochs on
/// the same uniform grid always map to distinct consecutive indices.
long long grid_index(const Epoch& e, double step_s);

/// Civil date (UTC) to integer MJD, e.g. 2017-02-01 -> 57785.
std::int32_t calendar_to_mjd(int year, int month, int day);

/// Inverse of calendar_to_mjd.
void mjd_to_calendar(std::int32_t mjd, int& year, int& month, int& day);

} // namespace satft

#endif
