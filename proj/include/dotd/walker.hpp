#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dotd/constants.hpp"
#include "dotd/error.hpp"
#include "dotd/time.hpp"
#include "dotd/tle.hpp"

namespace dotd {

/// Walker-delta constellation with optional seeded irregularity.
struct WalkerSpec {
  int planes = 1;
  int sats_per_plane = 1;
  double altitude_km = 550.0;
  double inclination_deg = 53.0;
  /// Each plane's RAAN is offset by U(-raan_jitter, +raan_jitter).
  double raan_jitter_deg = 0.0;
  /// Each satellite's phase is offset by U(-phase_jitter, +phase_jitter).
  double phase_jitter_deg = 0.0;
  /// Walker phasing factor F: adjacent planes are offset by F * 360 / total.
  int phasing = 1;
  std::uint64_t seed = 1;
  UtcInstant epoch = make_utc(2024, 6, 10, 8, 23);
};

inline double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  return w >= 360.0 ? 0.0 : w;
}

inline std::vector<TleRecord> synthetic_walker(const WalkerSpec& spec) {
  if (spec.planes < 1 || spec.sats_per_plane < 1) throw ConfigError("walker needs planes >= 1 and sats >= 1");
  if (!(spec.altitude_km > 0.0)) throw ConfigError("walker altitude must be positive");
  if (!(spec.inclination_deg >= 0.0 && spec.inclination_deg <= 180.0)) {
    throw ConfigError("walker inclination outside [0, 180]");
  }
  if (spec.raan_jitter_deg < 0.0 || spec.phase_jitter_deg < 0.0) throw ConfigError("jitter must be non-negative");
  const int total = spec.planes * spec.sats_per_plane;
  if (total > 99999) throw ConfigError("walker constellation too large for 5-digit catalog numbers");

  // mt19937_64's output sequence is fixed by the standard; the distributions are not, so map to [0, 1) here.
  std::mt19937_64 rng(spec.seed);
  auto jitter = [&rng](double width) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return width * (2.0 * u - 1.0);
  };

  const double a = constants::kEarthRadiusKm + spec.altitude_km;
  const double n_rad_s = std::sqrt(constants::kMuKm3PerS2 / (a * a * a));
  const double mean_motion = n_rad_s * constants::kSecondsPerDay / constants::kTwoPi;

  std::vector<TleRecord> out;
  out.reserve(static_cast<std::size_t>(total));
  for (int p = 0; p < spec.planes; ++p) {
    const double raan = wrap_degrees(360.0 * p / spec.planes + jitter(spec.raan_jitter_deg));
    for (int s = 0; s < spec.sats_per_plane; ++s) {
      const double phase = 360.0 * s / spec.sats_per_plane + 360.0 * spec.phasing * p / total +
                           jitter(spec.phase_jitter_deg);
      TleRecord r;
      r.catalog_id = 1 + p * spec.sats_per_plane + s;
      r.name = "WALKER-P" + std::to_string(p) + "-S" + std::to_string(s);
      r.epoch = spec.epoch;
      r.inclination_deg = spec.inclination_deg;
      r.raan_deg = raan;
      r.eccentricity = 0.0;
      r.arg_perigee_deg = 0.0;
      r.mean_anomaly_deg = wrap_degrees(phase);
      r.mean_motion_rev_per_day = mean_motion;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace dotd
