#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dotd/constants.hpp"
#include "dotd/error.hpp"
#include "dotd/vec3.hpp"

namespace dotd {

enum class ThetaMaxMode {
  kComputed,  // arccos(R_e cos(theta_min) / H) - theta_min
  kFixed90,
};

struct VisibilityConfig {
  double theta_min_deg = 25.0;
  ThetaMaxMode theta_max_mode = ThetaMaxMode::kFixed90;
  double atmosphere_km = 50.0;
  double d_max_km = 7000.0;

  double blocking_radius_km() const { return constants::kEarthRadiusKm + atmosphere_km; }
};

inline void validate(const VisibilityConfig& cfg) {
  if (!(cfg.theta_min_deg >= 0.0 && cfg.theta_min_deg < 90.0)) throw ConfigError("theta_min must lie in [0, 90)");
  if (!(cfg.atmosphere_km >= 0.0)) throw ConfigError("atmosphere height must be non-negative");
  if (!(cfg.d_max_km > 0.0)) throw ConfigError("maximum ISL range must be positive");
}

/// Upper elevation bound paired with theta_min for a satellite at geocentric radius H.
inline double theta_max(double theta_min_deg, double radius_km) {
  const double ratio = constants::kEarthRadiusKm * std::cos(deg2rad(theta_min_deg)) / radius_km;
  if (!(ratio <= 1.0)) throw DomainError("theta_max undefined: R_e cos(theta_min) / H = " + std::to_string(ratio));
  return rad2deg(std::acos(ratio)) - theta_min_deg;
}

/// Elevation of `sat_pos` above the local horizon plane of `gs_pos`, degrees in [-90, 90].
inline double elevation_angle(const Vec3& gs_pos, const Vec3& sat_pos) {
  const Vec3 up = gs_pos / gs_pos.norm();
  const Vec3 los = sat_pos - gs_pos;
  const double s = std::clamp(dot(up, los) / los.norm(), -1.0, 1.0);
  return rad2deg(std::asin(s));
}

inline bool gs_visible(double elevation_deg, const VisibilityConfig& cfg, double radius_km) {
  double upper = 90.0;
  if (cfg.theta_max_mode == ThetaMaxMode::kComputed) {
    try {
      upper = theta_max(cfg.theta_min_deg, radius_km);
    } catch (const DomainError&) {
      return false;
    }
  }
  return elevation_deg >= cfg.theta_min_deg && elevation_deg <= upper;
}

/// Ground-to-satellite line-of-sight distance for elevation theta and geocentric radius H.
inline double slant_range(double elevation_deg, double radius_km) {
  constexpr double re = constants::kEarthRadiusKm;
  const double re_sin = re * std::sin(deg2rad(elevation_deg));
  const double alt = radius_km - re;
  const double radicand = re_sin * re_sin + alt * alt + 2.0 * re * alt;
  if (radicand < 0.0) throw DomainError("slant range: negative radicand (H below Earth surface)");
  return -re_sin + std::sqrt(radicand);
}

inline double isl_distance(const Vec3& a, const Vec3& b) { return distance(a, b); }

/// Distance from the geocenter to the line through two satellites, from the triangle with sides (H_i, H_j, D).
inline double triangle_altitude(double h_i, double h_j, double d) {
  if (d == 0.0) return std::min(h_i, h_j);
  // Heron in the cancellation-free ordering a >= b >= c.
  double s[3] = {h_i, h_j, d};
  std::sort(s, s + 3, [](double x, double y) { return x > y; });
  const double a = s[0], b = s[1], c = s[2];
  const double f1 = a + (b + c);
  double f2 = c - (a - b);
  const double f3 = c + (a - b);
  double f4 = a + (b - c);
  const double slack = 1e-12 * a;
  if (f2 < -slack || f4 < -slack) throw DomainError("sides do not form a triangle");
  f2 = std::max(f2, 0.0);
  f4 = std::max(f4, 0.0);
  const double area = 0.25 * std::sqrt(f1 * f2 * f3 * f4);
  return 2.0 * area / d;
}

/// Line of sight clears the atmosphere shell and the pair is within range.
inline bool isl_visible(double h_i, double h_j, double d, const VisibilityConfig& cfg) {
  return d < cfg.d_max_km && triangle_altitude(h_i, h_j, d) > cfg.blocking_radius_km();
}

}  // namespace dotd
