#pragma once

// Scenario execution and plot-ready output (CSV / JSON).

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dotd/dteg.hpp"
#include "dotd/orbital.hpp"
#include "dotd/plus_grid.hpp"
#include "dotd/routing.hpp"
#include "dotd/topology.hpp"
#include "json.hpp"

namespace dotd {

struct Scenario {
  std::string name;
  GroundStation source;
  GroundStation destination;
};

inline void validate(const Scenario& s) {
  validate(s.source);
  validate(s.destination);
  if (s.source.latitude_deg == s.destination.latitude_deg && s.source.longitude_deg == s.destination.longitude_deg &&
      s.source.altitude_km == s.destination.altitude_km) {
    throw ConfigError("scenario '" + s.name + "': source and destination coincide");
  }
}

/// The five ground-station pairs used throughout the evaluation.
inline std::vector<Scenario> table2_scenarios() {
  const GroundStation sydney{"Sydney", -33.865143, 151.209900};
  const GroundStation darwin{"Darwin", -12.46, 130.84};
  const GroundStation miami{"Miami", 25.761681, -80.191788};
  const GroundStation calgary{"Calgary", 51.049999, -114.066666};
  const GroundStation new_york{"New York", 40.730610, -73.935242};
  const GroundStation san_francisco{"San Francisco", 37.773972, -122.431297};
  const GroundStation phnom_penh{"Phnom Penh", 11.562108, 104.888535};
  const GroundStation kathmandu{"Kathmandu", 27.700769, 85.300140};
  return {
      {"S1", sydney, darwin},   {"S2", miami, calgary},          {"S3", new_york, miami},
      {"S4", new_york, san_francisco}, {"S5", phnom_penh, kathmandu},
  };
}

/// Scenario name used on whole-constellation churn rows.
inline constexpr std::string_view kChurnScenario = "*";

struct MetricsRow {
  std::string scenario;
  std::string algorithm;
  std::size_t slot = 0;
  RouteStatus status = RouteStatus::kOk;
  std::optional<std::size_t> sat_count;
  std::optional<std::size_t> isl_hops;
  std::optional<double> latency_ms_with_gs;
  std::optional<double> latency_ms_isl_only;
  std::optional<double> mean_capacity_bps;
  std::optional<std::size_t> persistent_links;

  bool is_churn_row() const { return scenario == kChurnScenario; }
};

inline MetricsRow route_row(const Scenario& sc, Algorithm alg, std::size_t slot, const RouteOutcome& outcome) {
  MetricsRow row;
  row.scenario = sc.name;
  row.algorithm = to_string(alg);
  row.slot = slot;
  row.status = outcome.status;
  if (outcome.status != RouteStatus::kOk) {
    // Failure marker: no satellites on the path, metrics absent.
    row.sat_count = 0;
    return row;
  }
  const RouteResult& r = *outcome.result;
  row.sat_count = r.satellite_count();
  row.isl_hops = r.isl_hops();
  row.latency_ms_with_gs = r.total_latency_s * 1e3;
  row.latency_ms_isl_only = r.isl_latency_s * 1e3;
  row.mean_capacity_bps = r.mean_link_capacity_bps;
  return row;
}

struct ExperimentConfig {
  VisibilityConfig visibility;
  RadioConfig radio;
  TopologyConfig topology;
  RouteWeight route_weight = RouteWeight::kLatency;
};

/// Optional per-slot observer, e.g. for writing edge lists.
using TopologySink = std::function<void(Algorithm, const TopologySnapshot&)>;

/// Runs every algorithm over the grid. Rows are grouped by algorithm, then slot;
/// each slot carries one row per scenario followed (from slot 1) by a churn row.
inline std::vector<MetricsRow> run_experiment(std::span<const TleRecord> records, const TimeGrid& grid,
                                              std::span<const Scenario> scenarios,
                                              std::span<const Algorithm> algorithms, const ExperimentConfig& cfg,
                                              const TopologySink& sink = {}) {
  validate(cfg.visibility);
  validate(cfg.radio);
  validate(cfg.topology);
  for (const auto& sc : scenarios) validate(sc);
  const auto orbits = make_orbits(records);
  if (orbits.empty()) throw ConfigError("experiment needs at least one TLE record");
  std::vector<std::int64_t> catalog_ids;
  for (const auto& r : records) catalog_ids.push_back(r.catalog_id);
  const RoutingConfig routing{cfg.visibility, cfg.radio, cfg.route_weight};

  struct Lane {
    Algorithm algorithm;
    std::optional<ScoreDrivenDesigner> scored;
    std::optional<PlusGridDesigner> grid;
    std::optional<TopologySnapshot> previous;
    std::vector<MetricsRow> rows;
  };
  std::vector<Lane> lanes;
  for (Algorithm a : algorithms) {
    Lane lane{a, std::nullopt, std::nullopt, std::nullopt, {}};
    if (a == Algorithm::kPlusGrid) {
      lane.grid.emplace(records, cfg.visibility, cfg.radio, cfg.topology);
    } else {
      lane.scored.emplace(a, cfg.topology);
    }
    lanes.push_back(std::move(lane));
  }

  for (std::size_t t = 0; t <= grid.slot_count; ++t) {
    const SatelliteSnapshot snap = make_snapshot(orbits, t, grid.instant(t));
    const SlotLinks layer = assess_slot(snap, cfg.visibility, cfg.radio);
    for (auto& lane : lanes) {
      TopologySnapshot topo = lane.scored ? lane.scored->step(layer) : lane.grid->step(snap, layer);
      if (sink) sink(lane.algorithm, topo);
      for (const auto& sc : scenarios) {
        lane.rows.push_back(
            route_row(sc, lane.algorithm, t, route(sc.source, sc.destination, topo, snap, routing, catalog_ids)));
      }
      if (lane.previous) {
        MetricsRow churn;
        churn.scenario = kChurnScenario;
        churn.algorithm = to_string(lane.algorithm);
        churn.slot = t;
        churn.persistent_links = persistent_links(*lane.previous, topo);
        lane.rows.push_back(std::move(churn));
      }
      lane.previous = std::move(topo);
    }
  }

  std::vector<MetricsRow> rows;
  for (auto& lane : lanes) rows.insert(rows.end(), lane.rows.begin(), lane.rows.end());
  return rows;
}

enum class OutputFormat { kCsv, kJson };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

inline constexpr std::string_view kCsvHeader =
    "scenario,algorithm,slot,sat_count,isl_hops,latency_ms_with_gs,latency_ms_isl_only,mean_capacity_bps,"
    "persistent_links";

namespace report_detail {

inline std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return number(*v);
  } else {
    return std::to_string(*v);
  }
}

inline std::string csv_text(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
nlohmann::ordered_json json_value(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace report_detail

inline void write_csv(std::span<const MetricsRow> rows, std::ostream& out) {
  using namespace report_detail;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_text(r.scenario) << ',' << csv_text(r.algorithm) << ',' << r.slot << ',' << cell(r.sat_count) << ','
        << cell(r.isl_hops) << ',' << cell(r.latency_ms_with_gs) << ',' << cell(r.latency_ms_isl_only) << ','
        << cell(r.mean_capacity_bps) << ',' << cell(r.persistent_links) << '\n';
  }
}

inline nlohmann::ordered_json to_json(std::span<const MetricsRow> rows) {
  using namespace report_detail;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json obj;
    obj["scenario"] = r.scenario;
    obj["algorithm"] = r.algorithm;
    obj["slot"] = r.slot;
    obj["sat_count"] = json_value(r.sat_count);
    obj["isl_hops"] = json_value(r.isl_hops);
    obj["latency_ms_with_gs"] = json_value(r.latency_ms_with_gs);
    obj["latency_ms_isl_only"] = json_value(r.latency_ms_isl_only);
    obj["mean_capacity_bps"] = json_value(r.mean_capacity_bps);
    obj["persistent_links"] = json_value(r.persistent_links);
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline void write_json(std::span<const MetricsRow> rows, std::ostream& out) { out << to_json(rows).dump(1) << '\n'; }

/// Writes rows to `destination`; "-" or empty means standard output.
inline void emit(std::span<const MetricsRow> rows, OutputFormat format, const std::string& destination) {
  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      write_csv(rows, os);
    } else {
      write_json(rows, os);
    }
  };
  if (destination.empty() || destination == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(destination, std::ios::binary);
  if (!file) throw Error("cannot open '" + destination + "' for writing");
  write(file);
  file.flush();
  if (!file) throw Error("failed writing '" + destination + "'");
}

}  // namespace dotd
