#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dotd/constants.hpp"
#include "dotd/error.hpp"
#include "dotd/time.hpp"
#include "dotd/tle.hpp"
#include "dotd/vec3.hpp"

namespace dotd {

/// Discrete simulation window: slots 0..slot_count at t0 + k * tau.
struct TimeGrid {
  UtcInstant t0{};
  double tau_s = 1.0;
  double horizon_s = 600.0;
  std::size_t slot_count = 600;

  UtcInstant instant(std::size_t slot) const { return add_seconds(t0, static_cast<double>(slot) * tau_s); }
};

inline TimeGrid make_time_grid(UtcInstant t0, double tau_s, double horizon_s) {
  if (!(tau_s > 0.0)) throw ConfigError("slot length tau must be positive");
  if (!(horizon_s >= tau_s)) throw ConfigError("horizon must be at least one slot long");
  const double ratio = horizon_s / tau_s;
  const double slots = std::round(ratio);
  if (std::abs(ratio - slots) > 1e-9 * slots) throw ConfigError("horizon must be an integer multiple of tau");
  return TimeGrid{t0, tau_s, horizon_s, static_cast<std::size_t>(slots)};
}

struct GroundStation {
  std::string name;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_km = 0.0;
};

inline void validate(const GroundStation& gs) {
  if (!(gs.latitude_deg >= -90.0 && gs.latitude_deg <= 90.0)) {
    throw ConfigError("ground station '" + gs.name + "': latitude outside [-90, 90]");
  }
  if (!(gs.longitude_deg > -180.0 && gs.longitude_deg <= 180.0)) {
    throw ConfigError("ground station '" + gs.name + "': longitude outside (-180, 180]");
  }
}

/// Positions of every satellite at one slot, ECI km.
struct SatelliteSnapshot {
  std::size_t slot = 0;
  UtcInstant instant{};
  std::vector<Vec3> positions;
  std::vector<double> radii;  // |position|, the geocentric radius H

  std::size_t size() const { return positions.size(); }
};

/// Eccentric anomaly E solving E - e sin E = M to 1e-12 rad.
inline double solve_kepler(double mean_anomaly, double eccentricity) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) throw DomainError("Kepler solve needs 0 <= e < 1");
  // Solve on the principal branch, then restore the whole revolutions.
  const double turns = std::floor(mean_anomaly / constants::kTwoPi);
  const double m = mean_anomaly - turns * constants::kTwoPi;
  double e_anom = eccentricity > 0.8 ? constants::kPi : m;
  double residual = 0.0;
  for (int iter = 0; iter < 50; ++iter) {
    residual = e_anom - eccentricity * std::sin(e_anom) - m;
    if (std::abs(residual) < 1e-12) return e_anom + turns * constants::kTwoPi;
    e_anom -= residual / (1.0 - eccentricity * std::cos(e_anom));
  }
  residual = e_anom - eccentricity * std::sin(e_anom) - m;
  if (std::abs(residual) < 1e-12) return e_anom + turns * constants::kTwoPi;
  throw DomainError("Kepler solve did not converge, residual " + std::to_string(residual));
}

inline double semi_major_axis_km(double mean_motion_rev_per_day) {
  const double n = mean_motion_rev_per_day * constants::kTwoPi / constants::kSecondsPerDay;
  return std::cbrt(constants::kMuKm3PerS2 / (n * n));
}

inline double orbital_period_s(double semi_major_axis) {
  return constants::kTwoPi * std::sqrt(semi_major_axis * semi_major_axis * semi_major_axis / constants::kMuKm3PerS2);
}

/// Two-body Keplerian orbit with the perifocal-to-ECI rotation cached.
class KeplerOrbit {
 public:
  explicit KeplerOrbit(const TleRecord& r)
      : epoch_(r.epoch),
        eccentricity_(r.eccentricity),
        mean_anomaly0_(deg2rad(r.mean_anomaly_deg)),
        mean_motion_(r.mean_motion_rev_per_day * constants::kTwoPi / constants::kSecondsPerDay),
        a_(semi_major_axis_km(r.mean_motion_rev_per_day)) {
    const double raan = deg2rad(r.raan_deg);
    const double inc = deg2rad(r.inclination_deg);
    const double argp = deg2rad(r.arg_perigee_deg);
    const double co = std::cos(raan), so = std::sin(raan);
    const double ci = std::cos(inc), si = std::sin(inc);
    const double cw = std::cos(argp), sw = std::sin(argp);
    p_ = {co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si};
    q_ = {-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si};
  }

  double semi_major_axis() const { return a_; }
  double eccentricity() const { return eccentricity_; }
  double period() const { return constants::kTwoPi / mean_motion_; }
  /// Orbit normal direction (unit angular momentum).
  Vec3 normal() const { return cross(p_, q_); }

  Vec3 position_after(double seconds_since_epoch) const {
    const double m = mean_anomaly0_ + mean_motion_ * seconds_since_epoch;
    const double e_anom = solve_kepler(m, eccentricity_);
    const double x = a_ * (std::cos(e_anom) - eccentricity_);
    const double y = a_ * std::sqrt(1.0 - eccentricity_ * eccentricity_) * std::sin(e_anom);
    return p_ * x + q_ * y;
  }

  Vec3 position_at(UtcInstant instant) const { return position_after(seconds_between(epoch_, instant)); }

 private:
  UtcInstant epoch_;
  double eccentricity_;
  double mean_anomaly0_;
  double mean_motion_;  // rad/s
  double a_;
  Vec3 p_;
  Vec3 q_;
};

inline Vec3 propagate(const TleRecord& record, UtcInstant instant) { return KeplerOrbit(record).position_at(instant); }

/// Greenwich mean sidereal time (IAU-1982), radians in [0, 2pi).
inline double gmst(UtcInstant instant) {
  const double tut1 = days_since_j2000(instant) / 36525.0;
  const double seconds = 67310.54841 + (876600.0 * 3600.0 + 8640184.812866) * tut1 + 0.093104 * tut1 * tut1 -
                         6.2e-6 * tut1 * tut1 * tut1;
  double angle = std::fmod(seconds * (constants::kTwoPi / constants::kSecondsPerDay), constants::kTwoPi);
  if (angle < 0.0) angle += constants::kTwoPi;
  return angle;
}

/// Spherical-Earth ground station position rotated into ECI.
inline Vec3 ground_station_eci(const GroundStation& gs, UtcInstant instant) {
  const double r = constants::kEarthRadiusKm + gs.altitude_km;
  const double lat = deg2rad(gs.latitude_deg);
  const double lon = deg2rad(gs.longitude_deg) + gmst(instant);
  return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)};
}

/// Records whose epoch lies further than `window_days` from any slot of the grid.
inline std::vector<std::size_t> records_outside_validity(std::span<const TleRecord> records, const TimeGrid& grid,
                                                         double window_days = 7.0) {
  std::vector<std::size_t> out;
  const UtcInstant first = grid.t0;
  const UtcInstant last = grid.instant(grid.slot_count);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double a = std::abs(seconds_between(records[i].epoch, first));
    const double b = std::abs(seconds_between(records[i].epoch, last));
    if (std::max(a, b) > window_days * constants::kSecondsPerDay) out.push_back(i);
  }
  return out;
}

inline SatelliteSnapshot make_snapshot(std::span<const KeplerOrbit> orbits, std::size_t slot, UtcInstant instant) {
  SatelliteSnapshot snap;
  snap.slot = slot;
  snap.instant = instant;
  snap.positions.reserve(orbits.size());
  snap.radii.reserve(orbits.size());
  for (const auto& orbit : orbits) {
    snap.positions.push_back(orbit.position_at(instant));
    snap.radii.push_back(snap.positions.back().norm());
  }
  return snap;
}

inline std::vector<KeplerOrbit> make_orbits(std::span<const TleRecord> records) {
  std::vector<KeplerOrbit> orbits;
  orbits.reserve(records.size());
  for (const auto& r : records) {
    try {
      validate(r);
      orbits.emplace_back(r);
    } catch (const Error& e) {
      throw PropagationError(r.name + " (" + std::to_string(r.catalog_id) + ")", e.what());
    }
  }
  return orbits;
}

/// One snapshot per slot 0..slot_count inclusive.
inline std::vector<SatelliteSnapshot> snapshot_series(std::span<const TleRecord> records, const TimeGrid& grid) {
  if (records.empty()) throw ConfigError("snapshot series needs at least one TLE record");
  const auto orbits = make_orbits(records);
  std::vector<SatelliteSnapshot> series;
  series.reserve(grid.slot_count + 1);
  for (std::size_t t = 0; t <= grid.slot_count; ++t) series.push_back(make_snapshot(orbits, t, grid.instant(t)));
  return series;
}

}  // namespace dotd
