#ifndef SATFT_CONSTANTS_HPP
#define SATFT_CONSTANTS_HPP

namespace satft {

constexpr double kSpeedOfLight = 299792458.0; // m/s
constexpr double kSecondsPerDay = 86400.0;

// First-order ionospheric refraction: delay_m = kIonoCoeff * TEC / f^2
// with TEC in electrons/m^2 and f in Hz. Carrier phase is advanced
// (negative delay), group delay is positive.
constexpr double kIonoCoeff = 40.308;
constexpr double kTecuToElectronsPerM2 = 1e16;

// GPS L1/L2 carriers; the narrowlane wavelength in light-time is 1/(f1+f2).
constexpr double kGpsL1Hz = 1575.42e6;
constexpr double kGpsL2Hz = 1227.60e6;

constexpr double kEarthRadiusM = 6371.0e3;
constexpr double kDefaultIonoShellHeightM = 450.0e3;

} // namespace satft

#endif
