#pragma once

#include <numbers>

namespace dotd {

/// Physical and model constants shared by every module.
namespace constants {

inline constexpr double kEarthRadiusKm = 6378.0;
inline constexpr double kMuKm3PerS2 = 398600.4418;
inline constexpr double kSpeedOfLightMPerS = 3.0e8;
inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kReferenceNoiseTempK = 290.0;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

inline constexpr double kSecondsPerDay = 86400.0;

}  // namespace constants

inline constexpr double deg2rad(double deg) { return deg * constants::kDegToRad; }
inline constexpr double rad2deg(double rad) { return rad * constants::kRadToDeg; }

}  // namespace dotd
