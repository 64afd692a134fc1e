#pragma once

#include <cmath>
#include <optional>

#include "dotd/constants.hpp"
#include "dotd/error.hpp"
#include "dotd/geometry.hpp"

namespace dotd {

/// Radio parameters for both link classes. Gains in dBi, losses in dB (positive = attenuation).
struct RadioConfig {
  double carrier_hz = 12.2e9;
  double bandwidth_hz = 100e6;
  double tx_power_w = 10.0;
  double noise_power_w = constants::kBoltzmann * constants::kReferenceNoiseTempK * 100e6;
  double gs_gain_dbi = 33.2;
  double leo_gain_dbi = 40.0;
  double leo_tx_gain_dbi = 40.0;
  double leo_rx_gain_dbi = 40.0;
  double polarization_loss_db = 4.5;
  double misalignment_loss_db = 0.5;
  double weather_factor = 1.0;  // linear, <= 1
};

inline void validate(const RadioConfig& cfg) {
  if (!(cfg.carrier_hz > 0.0)) throw ConfigError("carrier frequency must be positive");
  if (!(cfg.bandwidth_hz > 0.0)) throw ConfigError("bandwidth must be positive");
  if (!(cfg.tx_power_w > 0.0)) throw ConfigError("transmit power must be positive");
  if (!(cfg.noise_power_w > 0.0)) throw ConfigError("noise power must be positive");
  if (!(cfg.weather_factor > 0.0 && cfg.weather_factor <= 1.0)) throw ConfigError("weather factor must lie in (0, 1]");
  if (!(cfg.polarization_loss_db >= 0.0 && cfg.misalignment_loss_db >= 0.0)) {
    throw ConfigError("loss values are attenuations and must be non-negative dB");
  }
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Free-space gain (lambda / (4 pi d))^2 with d in km.
inline double fspl_gain(double distance_km, double carrier_hz) {
  if (!(distance_km > 0.0)) throw DomainError("free-space gain needs a positive distance");
  const double wavelength = constants::kSpeedOfLightMPerS / carrier_hz;
  const double ratio = wavelength / (4.0 * constants::kPi * distance_km * 1e3);
  return ratio * ratio;
}

inline double gs_channel_gain(double distance_km, const RadioConfig& cfg) {
  return fspl_gain(distance_km, cfg.carrier_hz) * cfg.weather_factor * db_to_linear(cfg.gs_gain_dbi) *
         db_to_linear(cfg.leo_gain_dbi);
}

inline double shannon_capacity(double snr, double bandwidth_hz) { return bandwidth_hz * std::log2(1.0 + snr); }

inline double gs_capacity(double distance_km, const RadioConfig& cfg) {
  return shannon_capacity(cfg.tx_power_w * gs_channel_gain(distance_km, cfg) / cfg.noise_power_w, cfg.bandwidth_hz);
}

inline double isl_channel_gain(double distance_km, const RadioConfig& cfg) {
  return fspl_gain(distance_km, cfg.carrier_hz) * db_to_linear(-cfg.polarization_loss_db) *
         db_to_linear(-cfg.misalignment_loss_db) * db_to_linear(cfg.leo_rx_gain_dbi) *
         db_to_linear(cfg.leo_tx_gain_dbi);
}

inline double isl_snr(double distance_km, const RadioConfig& cfg) {
  return cfg.tx_power_w * isl_channel_gain(distance_km, cfg) / cfg.noise_power_w;
}

inline double isl_capacity(double distance_km, const RadioConfig& cfg) {
  return shannon_capacity(isl_snr(distance_km, cfg), cfg.bandwidth_hz);
}

/// Propagation delay, seconds.
inline double propagation_delay(double distance_km) { return distance_km * 1e3 / constants::kSpeedOfLightMPerS; }

inline double isl_latency(double distance_km) { return propagation_delay(distance_km); }

/// Ground link quality (delay + 1/capacity); empty when the satellite is outside the visible region.
inline std::optional<double> gs_link_quality(double elevation_deg, double radius_km, const RadioConfig& radio,
                                             const VisibilityConfig& vis) {
  if (!gs_visible(elevation_deg, vis, radius_km)) return std::nullopt;
  const double d = slant_range(elevation_deg, radius_km);
  return propagation_delay(d) + 1.0 / gs_capacity(d, radio);
}

}  // namespace dotd
