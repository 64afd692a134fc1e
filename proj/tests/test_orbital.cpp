#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dotd/orbital.hpp"
#include "support/oracles.hpp"

namespace {

constexpr double kRe = 6378.0;
constexpr double kMu = 398600.4418;

dotd::TleRecord circular(double altitude_km, double incl = 0.0, double raan = 0.0, double m = 0.0) {
  dotd::TleRecord r;
  r.name = "TEST";
  r.catalog_id = 1;
  r.epoch = dotd::make_utc(2024, 6, 10, 8, 23);
  const double a = kRe + altitude_km;
  r.mean_motion_rev_per_day = std::sqrt(kMu / (a * a * a)) * 86400.0 / (2.0 * std::acos(-1.0));
  r.inclination_deg = incl;
  r.raan_deg = raan;
  r.mean_anomaly_deg = m;
  return r;
}

}  // namespace

TEST(Time, ParseAndFormat) {
  const auto t = dotd::parse_utc("2024-06-10T08:23:00Z");
  EXPECT_EQ(t, dotd::make_utc(2024, 6, 10, 8, 23));
  EXPECT_EQ(dotd::format_utc(t), "2024-06-10T08:23:00.000Z");
  EXPECT_EQ(dotd::parse_utc("2024-06-10T08:23:00.250"), dotd::make_utc(2024, 6, 10, 8, 23, 0.25));
  EXPECT_THROW(dotd::parse_utc("2024-13-10T08:23:00Z"), dotd::ConfigError);
  EXPECT_THROW(dotd::parse_utc("yesterday"), dotd::ConfigError);
  EXPECT_DOUBLE_EQ(dotd::julian_date(dotd::make_utc(2000, 1, 1, 12)), 2451545.0);
}

TEST(TimeGrid, SlotCountAndValidation) {
  const auto t0 = dotd::make_utc(2024, 6, 10);
  const auto g = dotd::make_time_grid(t0, 1.0, 600.0);
  EXPECT_EQ(g.slot_count, 600u);
  EXPECT_EQ(g.instant(600), t0 + std::chrono::seconds(600));
  EXPECT_THROW(dotd::make_time_grid(t0, 0.0, 10.0), dotd::ConfigError);
  EXPECT_THROW(dotd::make_time_grid(t0, 10.0, 5.0), dotd::ConfigError);
  EXPECT_THROW(dotd::make_time_grid(t0, 7.0, 20.0), dotd::ConfigError);
}

TEST(Kepler, Examples) {
  EXPECT_DOUBLE_EQ(dotd::solve_kepler(0.5, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(dotd::solve_kepler(0.0, 0.3), 0.0);
  const double e_anom = dotd::solve_kepler(1.0, 0.1);
  EXPECT_NEAR(e_anom, oracle::kepler_bisection(1.0, 0.1), 1e-12);
  EXPECT_LT(std::abs(e_anom - 0.1 * std::sin(e_anom) - 1.0), 1e-12);
}

TEST(Kepler, MatchesBisectionAcrossEccentricities) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> m(0.0, 2.0 * std::acos(-1.0)), e(0.0, 0.99);
  for (int k = 0; k < 2000; ++k) {
    const double mm = m(rng), ee = e(rng);
    const double got = dotd::solve_kepler(mm, ee);
    EXPECT_LT(std::abs(got - ee * std::sin(got) - mm), 1e-12) << mm << " " << ee;
    EXPECT_NEAR(got, oracle::kepler_bisection(mm, ee), 1e-9);
  }
  EXPECT_THROW(dotd::solve_kepler(1.0, 1.0), dotd::DomainError);
  EXPECT_THROW(dotd::solve_kepler(1.0, -0.1), dotd::DomainError);
}

TEST(Propagate, EquatorialCircularAxes) {
  const auto r = circular(550.0);
  const double a = dotd::semi_major_axis_km(r.mean_motion_rev_per_day);
  EXPECT_NEAR(a, kRe + 550.0, 1e-9);
  const auto p0 = dotd::propagate(r, r.epoch);
  EXPECT_NEAR(p0.x, a, 1e-9);
  EXPECT_NEAR(p0.y, 0.0, 1e-9);
  EXPECT_NEAR(p0.z, 0.0, 1e-9);
  const double half = dotd::orbital_period_s(a) / 2.0;
  const auto ph = dotd::KeplerOrbit(r).position_after(half);
  EXPECT_NEAR(ph.x, -a, 1e-6);
  EXPECT_NEAR(ph.y, 0.0, 1e-6);
}

TEST(Propagate, PeriodicityForRandomElements) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 360.0), incl(0.0, 180.0), ecc(0.0, 0.2), alt(300.0, 2000.0);
  for (int k = 0; k < 50; ++k) {
    auto r = circular(alt(rng), incl(rng), angle(rng), angle(rng));
    r.eccentricity = ecc(rng);
    r.arg_perigee_deg = angle(rng);
    const dotd::KeplerOrbit orbit(r);
    const auto p0 = orbit.position_after(0.0);
    const auto p1 = orbit.position_after(orbit.period());
    EXPECT_LT(dotd::distance(p0, p1), 1e-6);
  }
}

TEST(Propagate, RadiusBoundsAndAngularMomentum) {
  auto r = circular(800.0, 63.4, 40.0, 10.0);
  r.eccentricity = 0.05;
  r.arg_perigee_deg = 270.0;
  const dotd::KeplerOrbit orbit(r);
  const double a = orbit.semi_major_axis();
  const auto n = orbit.normal();
  for (int s = 0; s < 120; ++s) {
    const auto p0 = orbit.position_after(s * 60.0);
    const auto p1 = orbit.position_after(s * 60.0 + 1.0);
    EXPECT_GE(p0.norm(), a * (1 - 0.05) - 1e-9);
    EXPECT_LE(p0.norm(), a * (1 + 0.05) + 1e-9);
    const auto h = dotd::cross(p0, p1 - p0);
    EXPECT_NEAR(dotd::dot(h / h.norm(), n), 1.0, 1e-9);
  }
}

TEST(Propagate, CircularNormConservedOverSeries) {
  const auto rec = circular(550.0, 53.0, 10.0, 20.0);
  const auto grid = dotd::make_time_grid(rec.epoch, 10.0, 6000.0);
  const std::vector<dotd::TleRecord> recs{rec};
  const auto series = dotd::snapshot_series(recs, grid);
  ASSERT_EQ(series.size(), 601u);
  for (const auto& s : series) {
    EXPECT_NEAR(s.radii[0], kRe + 550.0, 1e-9);
    EXPECT_DOUBLE_EQ(s.radii[0], s.positions[0].norm());
  }
}

TEST(Propagate, CircularSpeedAt550Km) {
  const dotd::KeplerOrbit orbit(circular(550.0));
  const double v = dotd::distance(orbit.position_after(0.0), orbit.position_after(1e-3)) / 1e-3;
  EXPECT_NEAR(v, std::sqrt(kMu / (kRe + 550.0)), 1e-5);
  EXPECT_LT(std::abs(v - 7.66) / 7.66, 0.02);
}

TEST(SnapshotSeries, CountsAndErrors) {
  const auto rec = circular(550.0);
  const std::vector<dotd::TleRecord> one{rec};
  EXPECT_EQ(dotd::snapshot_series(one, dotd::make_time_grid(rec.epoch, 1.0, 1.0)).size(), 2u);
  EXPECT_EQ(dotd::snapshot_series(one, dotd::make_time_grid(rec.epoch, 60.0, 60.0)).size(), 2u);
  EXPECT_THROW(dotd::snapshot_series(std::vector<dotd::TleRecord>{}, dotd::make_time_grid(rec.epoch, 1.0, 1.0)),
               dotd::ConfigError);
  auto bad = rec;
  bad.name = "BROKEN";
  bad.catalog_id = 777;
  bad.eccentricity = 1.5;
  try {
    dotd::snapshot_series(std::vector<dotd::TleRecord>{rec, bad}, dotd::make_time_grid(rec.epoch, 1.0, 1.0));
    FAIL();
  } catch (const dotd::PropagationError& e) {
    EXPECT_NE(std::string(e.what()).find("BROKEN"), std::string::npos);
    EXPECT_NE(e.satellite().find("777"), std::string::npos);
  }
}

TEST(SnapshotSeries, LargeConstellationShape) {
  std::vector<dotd::TleRecord> recs;
  for (int k = 0; k < 907; ++k) recs.push_back(circular(550.0, 53.0, (k % 72) * 5.0, (k / 72) * 27.0));
  const auto series = dotd::snapshot_series(recs, dotd::make_time_grid(recs[0].epoch, 1.0, 600.0));
  ASSERT_EQ(series.size(), 601u);
  EXPECT_EQ(series.back().size(), 907u);
  EXPECT_EQ(series.back().slot, 600u);
}

TEST(Gmst, J2000AndPeriodicity) {
  // IAU-1982 at J2000: 67310.54841 s of sidereal time.
  const double expected = std::fmod(67310.54841 / 86400.0 * 2.0 * std::acos(-1.0), 2.0 * std::acos(-1.0));
  EXPECT_NEAR(expected, 4.894961, 1e-6);
  const auto j2000 = dotd::make_utc(2000, 1, 1, 12);
  EXPECT_NEAR(dotd::gmst(j2000), 4.894961, 1e-4);

  const double sidereal_day = 86400.0 / 1.002737909350795;
  const double pi = std::acos(-1.0);
  for (const auto t : {j2000, dotd::make_utc(2024, 6, 10, 8, 23), dotd::make_utc(1990, 3, 1)}) {
    const double g0 = dotd::gmst(t);
    EXPECT_GE(g0, 0.0);
    EXPECT_LT(g0, 2 * pi);
    const double g1 = dotd::gmst(dotd::add_seconds(t, sidereal_day));
    const double wrapped = std::remainder(g1 - g0, 2 * pi);
    EXPECT_NEAR(wrapped, 0.0, 1e-6);
    const double g_half = dotd::gmst(dotd::add_seconds(t, sidereal_day / 2));
    EXPECT_NEAR(std::abs(std::remainder(g_half - g0, 2 * pi)), pi, 1e-6);
  }
}

TEST(GroundStation, EciExamples) {
  const auto t = dotd::make_utc(2024, 6, 10, 8, 23);
  const auto pole = dotd::ground_station_eci({"pole", 90.0, 37.0}, t);
  EXPECT_NEAR(pole.x, 0.0, 1e-9);
  EXPECT_NEAR(pole.y, 0.0, 1e-9);
  EXPECT_NEAR(pole.z, kRe, 1e-9);

  // Find an instant with gmst = 0 by stepping back from J2000 by the current angle.
  const auto j2000 = dotd::make_utc(2000, 1, 1, 12);
  const double rate = 2.0 * std::acos(-1.0) * 1.002737909350795 / 86400.0;
  const auto t0 = dotd::add_seconds(j2000, -dotd::gmst(j2000) / rate);
  ASSERT_NEAR(std::remainder(dotd::gmst(t0), 2.0 * std::acos(-1.0)), 0.0, 1e-6);
  const auto origin = dotd::ground_station_eci({"null island", 0.0, 0.0}, t0);
  EXPECT_NEAR(origin.x, kRe, 1e-2);
  EXPECT_NEAR(origin.y, 0.0, 1e-2);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-179.999, 180), alt(0, 5);
  for (int k = 0; k < 100; ++k) {
    const dotd::GroundStation gs{"x", lat(rng), lon(rng), alt(rng)};
    EXPECT_NEAR(dotd::ground_station_eci(gs, dotd::add_seconds(t, k * 977.0)).norm(), kRe + gs.altitude_km, 1e-9);
  }
}

TEST(GroundStation, Validation) {
  EXPECT_THROW(dotd::validate(dotd::GroundStation{"bad", 91.0, 0.0}), dotd::ConfigError);
  EXPECT_THROW(dotd::validate(dotd::GroundStation{"bad", 0.0, -180.0}), dotd::ConfigError);
  EXPECT_NO_THROW(dotd::validate(dotd::GroundStation{"ok", -90.0, 180.0}));
}

TEST(Validity, RecordsFarFromGridAreReported) {
  auto fresh = circular(550.0);
  auto stale = fresh;
  stale.epoch = dotd::add_seconds(fresh.epoch, -8 * 86400.0);
  const std::vector<dotd::TleRecord> recs{fresh, stale};
  const auto out = dotd::records_outside_validity(recs, dotd::make_time_grid(fresh.epoch, 1.0, 600.0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], 1u);
}
