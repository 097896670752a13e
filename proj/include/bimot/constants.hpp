#pragma once

namespace bimot {

// CODATA 2018 values, SI.
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);        // J s
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kBohrMagneton = 9.2740100783e-24;     // J/T
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

// Unit conversions used by the config layer.
inline constexpr double kGaussPerCmToTeslaPerM = 1e-2;
inline constexpr double kMilliWattPerCm2ToWattPerM2 = 10.0;

// I_s = pi h c Gamma / (3 lambda^3), the two-level saturation intensity.
inline constexpr double saturation_intensity(double gamma, double wavelength) {
  return kPi * kPlanck * kSpeedOfLight * gamma /
         (3.0 * wavelength * wavelength * wavelength);
}

}  // namespace bimot
