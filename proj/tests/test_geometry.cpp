#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dotd/geometry.hpp"
#include "dotd/link_budget.hpp"
#include "support/oracles.hpp"

namespace {
constexpr double kRe = 6378.0;
const double kPi = std::acos(-1.0);
double rad(double deg) { return deg * kPi / 180.0; }
}  // namespace

TEST(ThetaMax, Examples) {
  EXPECT_DOUBLE_EQ(dotd::theta_max(0.0, kRe), 0.0);
  EXPECT_NEAR(dotd::theta_max(0.0, 2 * kRe), 60.0, 1e-12);
  const double expected = std::acos(kRe * std::cos(rad(25)) / 6928.0) * 180.0 / kPi - 25.0;
  EXPECT_NEAR(dotd::theta_max(25.0, 6928.0), expected, 1e-12);
  EXPECT_NEAR(expected, 8.4, 0.1);
  EXPECT_THROW(dotd::theta_max(0.0, kRe - 1.0), dotd::DomainError);
}

TEST(Elevation, Examples) {
  const dotd::Vec3 gs{kRe, 0, 0};
  EXPECT_NEAR(dotd::elevation_angle(gs, gs * 1.1), 90.0, 1e-12);
  EXPECT_NEAR(dotd::elevation_angle(gs, {kRe, 500, 0}), 0.0, 1e-12);
  EXPECT_LT(dotd::elevation_angle(gs, {kRe - 10, 500, 0}), 0.0);
  EXPECT_NEAR(dotd::elevation_angle(gs, {kRe + 100, 100, 0}), 45.0, 1e-9);
}

TEST(GsVisible, ClosedIntervalAndModes) {
  dotd::VisibilityConfig cfg;
  cfg.theta_min_deg = 25;
  EXPECT_TRUE(dotd::gs_visible(25.0, cfg, 6928));
  EXPECT_FALSE(dotd::gs_visible(24.999, cfg, 6928));
  EXPECT_TRUE(dotd::gs_visible(89.0, cfg, 6928));
  EXPECT_TRUE(dotd::gs_visible(90.0, cfg, 6928));
  cfg.theta_max_mode = dotd::ThetaMaxMode::kComputed;
  // Computed upper bound is ~8.4 degrees, below theta_min: nothing is visible.
  EXPECT_FALSE(dotd::gs_visible(25.0, cfg, 6928));
  EXPECT_FALSE(dotd::gs_visible(5.0, cfg, 6928));
  cfg.theta_min_deg = 0;
  const double upper = dotd::theta_max(0, 6928);
  EXPECT_TRUE(dotd::gs_visible(upper, cfg, 6928));
  EXPECT_FALSE(dotd::gs_visible(upper + 1e-9, cfg, 6928));
}

TEST(SlantRange, Examples) {
  const double h = kRe + 550;
  EXPECT_EQ(dotd::slant_range(90.0, h), 550.0);
  EXPECT_NEAR(dotd::slant_range(0.0, h), std::sqrt(h * h - kRe * kRe), 1e-9);
  // Law of cosines: d^2 = Re^2 + H^2 - 2 Re H cos(nadir-angle complement).
  const double d45 = dotd::slant_range(45.0, 6928);
  const double gamma = rad(90 + 45);
  const double law = d45 * d45 + kRe * kRe - 2 * d45 * kRe * std::cos(gamma);
  EXPECT_NEAR(std::sqrt(law), 6928.0, 1e-9);
  EXPECT_NEAR(d45, -kRe * std::sin(rad(45)) + std::sqrt(kRe * kRe * std::pow(std::sin(rad(45)), 2) + 6928.0 * 6928.0 -
                                                          kRe * kRe),
              1e-9);
}

TEST(SlantRange, DecreasesWithElevation) {
  double prev = dotd::slant_range(0.0, 6928);
  for (double th = 0.5; th <= 90.0; th += 0.5) {
    const double d = dotd::slant_range(th, 6928);
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(IslDistance, Examples) {
  EXPECT_EQ(dotd::isl_distance({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_EQ(dotd::isl_distance({0, 0, 0}, {3, 4, 0}), 5.0);
  const dotd::Vec3 a{100, -20, 7}, b{-3, 55, 1000};
  EXPECT_EQ(dotd::isl_distance(a, b), dotd::isl_distance(b, a));
}

TEST(TriangleAltitude, Examples) {
  const double h = 6928;
  for (double d : {1.0, 100.0, 3000.0, 13000.0}) {
    EXPECT_NEAR(dotd::triangle_altitude(h, h, d), std::sqrt(h * h - d * d / 4), 1e-6);
  }
  EXPECT_NEAR(dotd::triangle_altitude(7000, 6900, 13900), 0.0, 1e-6);
  EXPECT_NEAR(dotd::triangle_altitude(7000, 6900, 1000), oracle::point_line_altitude(7000, 6900, 1000), 1e-6);
  EXPECT_EQ(dotd::triangle_altitude(7000, 6900, 0.0), 6900.0);
  EXPECT_THROW(dotd::triangle_altitude(7000, 6900, 20000), dotd::DomainError);
}

TEST(TriangleAltitude, HeronMatchesPointToLineOracle) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> radius(6500, 8500), angle(1e-4, kPi - 1e-4);
  for (int k = 0; k < 10000; ++k) {
    const double hi = radius(rng), hj = radius(rng), th = angle(rng);
    const double d = std::sqrt(hi * hi + hj * hj - 2 * hi * hj * std::cos(th));
    EXPECT_NEAR(dotd::triangle_altitude(hi, hj, d), oracle::point_line_altitude(hi, hj, d), 1e-6)
        << hi << " " << hj << " " << d;
  }
}

TEST(IslVisible, Examples) {
  const dotd::VisibilityConfig cfg;
  EXPECT_TRUE(dotd::isl_visible(6928, 6928, 100, cfg));
  EXPECT_NEAR(dotd::triangle_altitude(6928, 6928, 100), 6927.8, 0.05);
  EXPECT_FALSE(dotd::isl_visible(6928, 6928, 7500, cfg));
  EXPECT_FALSE(dotd::isl_visible(6928, 6928, 7000, cfg));
  EXPECT_FALSE(dotd::isl_visible(6928, 6928, 2 * 6928 - 1, cfg));
  EXPECT_FALSE(dotd::isl_visible(6928, 6928, 2 * 6928 - 1, cfg));
  // Chord that grazes the 6428 km shell: D = 2 sqrt(H^2 - 6428^2).
  const double graze = 2 * std::sqrt(6928.0 * 6928.0 - 6428.0 * 6428.0);
  dotd::VisibilityConfig wide;
  wide.d_max_km = 1e5;
  EXPECT_TRUE(dotd::isl_visible(6928, 6928, graze - 1, wide));
  EXPECT_FALSE(dotd::isl_visible(6928, 6928, graze + 1, wide));
  EXPECT_EQ(dotd::isl_visible(7000, 6900, 3000, cfg), dotd::isl_visible(6900, 7000, 3000, cfg));
}

TEST(VisibilityConfig, Validation) {
  dotd::VisibilityConfig cfg;
  cfg.theta_min_deg = 90;
  EXPECT_THROW(dotd::validate(cfg), dotd::ConfigError);
  cfg = {};
  cfg.atmosphere_km = -1;
  EXPECT_THROW(dotd::validate(cfg), dotd::ConfigError);
  cfg = {};
  cfg.d_max_km = 0;
  EXPECT_THROW(dotd::validate(cfg), dotd::ConfigError);
}

TEST(LinkBudget, DbConversion) {
  EXPECT_EQ(dotd::db_to_linear(0), 1.0);
  EXPECT_DOUBLE_EQ(dotd::db_to_linear(10), 10.0);
  EXPECT_NEAR(dotd::db_to_linear(-4.5), 0.3548, 1e-4);
}

TEST(LinkBudget, FreeSpaceGain) {
  const double f = 12.2e9;
  const double expected = std::pow((3e8 / f) / (4 * kPi * 1e6), 2);
  EXPECT_NEAR(dotd::fspl_gain(1000, f) / expected, 1.0, 1e-12);
  EXPECT_NEAR(dotd::fspl_gain(2000, f) / dotd::fspl_gain(1000, f), 0.25, 1e-12);
  for (double d = 1; d < 1e5; d *= 3) EXPECT_LT(dotd::fspl_gain(d, f), 1.0);
  EXPECT_THROW(dotd::fspl_gain(0, f), dotd::DomainError);
  EXPECT_THROW(dotd::fspl_gain(-5, f), dotd::DomainError);
}

TEST(LinkBudget, GroundGain) {
  dotd::RadioConfig cfg;
  const double fspl = std::pow((3e8 / 12.2e9) / (4 * kPi * 550e3), 2);
  EXPECT_NEAR(dotd::gs_channel_gain(550, cfg) / (fspl * std::pow(10, 3.32) * std::pow(10, 4.0)), 1.0, 1e-12);
  const double full = dotd::gs_channel_gain(550, cfg);
  cfg.weather_factor = 0.5;
  EXPECT_NEAR(dotd::gs_channel_gain(550, cfg), full / 2, full * 1e-15);
}

TEST(LinkBudget, Capacities) {
  EXPECT_EQ(dotd::shannon_capacity(1.0, 100e6), 100e6);
  EXPECT_EQ(dotd::shannon_capacity(3.0, 100e6), 200e6);
  EXPECT_EQ(dotd::shannon_capacity(0.0, 100e6), 0.0);

  // Choose P_Tx so the ground SNR at 1000 km is exactly one.
  dotd::RadioConfig cfg;
  cfg.tx_power_w = cfg.noise_power_w / dotd::gs_channel_gain(1000, cfg);
  EXPECT_NEAR(dotd::gs_capacity(1000, cfg), 100e6, 1e-6);

  const dotd::RadioConfig def;
  double prev = dotd::gs_capacity(300, def);
  for (double d = 301; d < 3000; d += 17) {
    EXPECT_LT(dotd::gs_capacity(d, def), prev);
    prev = dotd::gs_capacity(d, def);
  }
}

TEST(LinkBudget, IslGainAndCapacity) {
  dotd::RadioConfig cfg;
  const double fspl = std::pow((3e8 / 12.2e9) / (4 * kPi * 1e6), 2);
  const double expected = fspl * std::pow(10, -0.45) * std::pow(10, -0.05) * 1e4 * 1e4;
  EXPECT_NEAR(dotd::isl_channel_gain(1000, cfg) / expected, 1.0, 1e-12);
  auto lossless = cfg;
  lossless.polarization_loss_db = 0;
  lossless.misalignment_loss_db = 0;
  EXPECT_NEAR(dotd::isl_channel_gain(1000, lossless) / dotd::isl_channel_gain(1000, cfg), std::pow(10, 0.5), 1e-12);

  const double noise = 1.380649e-23 * 290 * 100e6;
  EXPECT_NEAR(cfg.noise_power_w / noise, 1.0, 1e-12);
  const double snr2000 = 10 * std::pow((3e8 / 12.2e9) / (4 * kPi * 2e6), 2) * std::pow(10, -0.5) * 1e8 / noise;
  EXPECT_NEAR(dotd::isl_capacity(2000, cfg) / (100e6 * std::log2(1 + snr2000)), 1.0, 1e-12);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(1, 7000);
  for (int k = 0; k < 1000; ++k) {
    const double d = dist(rng);
    EXPECT_LE(dotd::isl_capacity(d + 1, cfg), dotd::isl_capacity(d, cfg));
    EXPECT_GE(dotd::isl_capacity(d, cfg), 0.0);
  }
  cfg.tx_power_w = 3 * cfg.noise_power_w / dotd::isl_channel_gain(1500, cfg);
  EXPECT_NEAR(dotd::isl_capacity(1500, cfg), 200e6, 1e-6);
}

TEST(LinkBudget, Latency) {
  EXPECT_EQ(dotd::isl_latency(3000), 0.01);
  EXPECT_EQ(dotd::isl_latency(3000) * 1e3, 10.0);
  EXPECT_NEAR(dotd::isl_latency(300), 1e-3, 1e-18);
  EXPECT_NEAR(dotd::isl_latency(1234) * 2, dotd::isl_latency(2468), 1e-18);
}

TEST(LinkBudget, GroundQuality) {
  const dotd::RadioConfig radio;
  dotd::VisibilityConfig vis;
  EXPECT_FALSE(dotd::gs_link_quality(10, 6928, radio, vis).has_value());
  const auto zenith = dotd::gs_link_quality(90, 6928, radio, vis);
  const auto low = dotd::gs_link_quality(25, 6928, radio, vis);
  ASSERT_TRUE(zenith && low);
  EXPECT_LT(*zenith, *low);
  EXPECT_GT(*zenith, 0.0);
  const double d = 550.0;
  EXPECT_NEAR(*zenith, d * 1e3 / 3e8 + 1.0 / dotd::gs_capacity(d, radio), 1e-18);
}

TEST(LinkBudget, Validation) {
  dotd::RadioConfig cfg;
  cfg.weather_factor = 1.5;
  EXPECT_THROW(dotd::validate(cfg), dotd::ConfigError);
  cfg = {};
  cfg.bandwidth_hz = 0;
  EXPECT_THROW(dotd::validate(cfg), dotd::ConfigError);
  cfg = {};
  cfg.polarization_loss_db = -1;
  EXPECT_THROW(dotd::validate(cfg), dotd::ConfigError);
}
