#pragma once

// Run configuration: a flat sectioned key = value file. Every physical
// parameter has a default, so a minimal file names a TLE source and nothing else.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dotd/error.hpp"
#include "dotd/geometry.hpp"
#include "dotd/link_budget.hpp"
#include "dotd/orbital.hpp"
#include "dotd/report.hpp"
#include "dotd/time.hpp"
#include "dotd/tle.hpp"
#include "dotd/tle_fetch.hpp"
#include "dotd/topology.hpp"
#include "dotd/walker.hpp"

namespace dotd {

struct RunConfig {
  std::string tle_file;
  std::string fetch_url;
  double fetch_timeout_s = 30.0;
  bool permissive_checksum = false;
  /// Synthetic constellation used instead of a TLE source when set.
  std::optional<WalkerSpec> walker;

  /// Defaults to the newest epoch among the loaded records.
  std::optional<UtcInstant> start;
  double tau_s = 1.0;
  double horizon_s = 600.0;
  /// Score restart period in seconds; 0 keeps one horizon for the whole run.
  double score_horizon_s = 0.0;

  VisibilityConfig visibility;
  RadioConfig radio;
  TopologyConfig topology;
  RouteWeight route_weight = RouteWeight::kLatency;
  std::vector<Algorithm> algorithms{Algorithm::kDotd, Algorithm::kGreedy, Algorithm::kPlusGrid};
  std::vector<Scenario> scenarios = table2_scenarios();

  std::string output = "-";
  OutputFormat format = OutputFormat::kCsv;
  std::uint64_t seed = 1;
};

namespace config_detail {

using Section = std::map<std::string, std::string>;

inline std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

inline double to_double(const std::string& section, const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("[" + section + "] " + key + ": '" + v + "' is not a number");
  }
  return out;
}

inline std::int64_t to_int(const std::string& section, const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("[" + section + "] " + key + ": '" + v + "' is not an integer");
  return out;
}

inline bool to_bool(const std::string& section, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("[" + section + "] " + key + ": '" + v + "' is not a boolean");
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = tle_detail::trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline ThetaMaxMode parse_theta_max_mode(std::string_view s) {
  if (s == "computed") return ThetaMaxMode::kComputed;
  if (s == "fixed90") return ThetaMaxMode::kFixed90;
  throw ConfigError("unknown theta_max mode '" + std::string(s) + "' (expected computed or fixed90)");
}

inline RouteWeight parse_route_weight(std::string_view s) {
  if (s == "latency") return RouteWeight::kLatency;
  if (s == "score") return RouteWeight::kScore;
  throw ConfigError("unknown routing weight '" + std::string(s) + "' (expected latency or score)");
}

/// Reads one section, rejecting keys the handler does not claim.
template <typename Handler>
void read_section(const std::string& name, const Section& values, Handler&& handle) {
  for (const auto& [key, value] : values) {
    if (!handle(key, value)) throw ConfigError("[" + name + "] unknown key '" + key + "'");
  }
}

}  // namespace config_detail

inline std::vector<Algorithm> parse_algorithm_list(std::string_view s) {
  std::vector<Algorithm> out;
  for (const auto& name : config_detail::split_list(s)) {
    const Algorithm a = parse_algorithm(name);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw ConfigError("algorithm list is empty");
  return out;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.tle_file.empty() && cfg.fetch_url.empty() && !cfg.walker) {
    throw ConfigError("no constellation source: set [tle] file, [tle] fetch_url or a [walker] section");
  }
  if (!(cfg.fetch_timeout_s > 0.0)) throw ConfigError("fetch timeout must be positive");
  make_time_grid(UtcInstant{}, cfg.tau_s, cfg.horizon_s);
  if (cfg.score_horizon_s < 0.0) throw ConfigError("score horizon must be non-negative");
  if (cfg.score_horizon_s > 0.0) {
    const double slots = cfg.score_horizon_s / cfg.tau_s;
    if (std::abs(slots - std::round(slots)) > 1e-9 * slots) {
      throw ConfigError("score horizon must be an integer multiple of tau");
    }
  }
  validate(cfg.visibility);
  validate(cfg.radio);
  validate(cfg.topology);
  if (cfg.algorithms.empty()) throw ConfigError("algorithm list is empty");
  for (const auto& sc : cfg.scenarios) validate(sc);
}

/// Score restart period expressed in slots.
inline std::size_t score_horizon_slots(const RunConfig& cfg) {
  return cfg.score_horizon_s > 0.0 ? static_cast<std::size_t>(std::llround(cfg.score_horizon_s / cfg.tau_s)) : 0;
}

inline RunConfig parse_config(std::istream& in, const std::string& origin = "<config>") {
  namespace pt = boost::property_tree;
  using namespace config_detail;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  RunConfig cfg;
  std::optional<std::string> preset;
  std::vector<Scenario> custom;

  for (const auto& [section_name, node] : tree) {
    if (node.empty()) throw ConfigError(origin + ": key '" + section_name + "' outside any section");
    Section values;
    for (const auto& [key, child] : node) values[key] = unquote(child.data());
    const std::string& s = section_name;

    if (s == "tle") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k == "file") cfg.tle_file = v;
        else if (k == "fetch_url") cfg.fetch_url = v;
        else if (k == "fetch_timeout") cfg.fetch_timeout_s = to_double(s, k, v);
        else if (k == "permissive_checksum") cfg.permissive_checksum = to_bool(s, k, v);
        else return false;
        return true;
      });
    } else if (s == "time") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k == "start") cfg.start = parse_utc(v);
        else if (k == "tau") cfg.tau_s = to_double(s, k, v);
        else if (k == "horizon") cfg.horizon_s = to_double(s, k, v);
        else return false;
        return true;
      });
    } else if (s == "visibility") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        auto& vis = cfg.visibility;
        if (k == "theta_min") vis.theta_min_deg = to_double(s, k, v);
        else if (k == "theta_max_mode") vis.theta_max_mode = parse_theta_max_mode(v);
        else if (k == "atmosphere_km") vis.atmosphere_km = to_double(s, k, v);
        else if (k == "d_max_km") vis.d_max_km = to_double(s, k, v);
        else return false;
        return true;
      });
    } else if (s == "radio") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        auto& r = cfg.radio;
        if (k == "carrier_hz") r.carrier_hz = to_double(s, k, v);
        else if (k == "bandwidth_hz") r.bandwidth_hz = to_double(s, k, v);
        else if (k == "tx_power_w") r.tx_power_w = to_double(s, k, v);
        else if (k == "noise_power_w") r.noise_power_w = to_double(s, k, v);
        else if (k == "gs_gain_dbi") r.gs_gain_dbi = to_double(s, k, v);
        else if (k == "leo_gain_dbi") r.leo_gain_dbi = to_double(s, k, v);
        else if (k == "leo_tx_gain_dbi") r.leo_tx_gain_dbi = to_double(s, k, v);
        else if (k == "leo_rx_gain_dbi") r.leo_rx_gain_dbi = to_double(s, k, v);
        else if (k == "polarization_loss_db") r.polarization_loss_db = to_double(s, k, v);
        else if (k == "misalignment_loss_db") r.misalignment_loss_db = to_double(s, k, v);
        else if (k == "weather_factor") r.weather_factor = to_double(s, k, v);
        else return false;
        return true;
      });
    } else if (s == "topology") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        auto& t = cfg.topology;
        if (k == "w1") t.weights.capacity = to_double(s, k, v);
        else if (k == "w2") t.weights.latency = to_double(s, k, v);
        else if (k == "max_links") {
          const auto u = to_int(s, k, v);
          if (u < 1 || u > 64) throw ConfigError("[topology] max_links must lie in [1, 64]");
          t.max_links = static_cast<unsigned>(u);
        } else if (k == "algorithms") cfg.algorithms = parse_algorithm_list(v);
        else if (k == "score_horizon_s") cfg.score_horizon_s = to_double(s, k, v);
        else if (k == "compat_alg1_order") {
          t.order = to_bool(s, k, v) ? SelectionOrder::kPerSatellite : SelectionOrder::kGlobal;
        } else if (k == "raan_tol_deg") t.plane_raan_tolerance_deg = to_double(s, k, v);
        else if (k == "incl_tol_deg") t.plane_inclination_tolerance_deg = to_double(s, k, v);
        else return false;
        return true;
      });
    } else if (s == "routing") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k != "weight") return false;
        cfg.route_weight = parse_route_weight(v);
        return true;
      });
    } else if (s == "scenarios") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k != "preset") return false;
        if (v != "table2" && v != "none") throw ConfigError("[scenarios] preset must be table2 or none");
        preset = v;
        return true;
      });
    } else if (s.rfind("scenario.", 0) == 0 || s.rfind("scenario:", 0) == 0) {
      Scenario sc;
      sc.name = s.substr(9);
      if (sc.name.empty()) throw ConfigError("scenario section needs a name");
      bool has[4] = {false, false, false, false};
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k == "src") sc.source.name = v;
        else if (k == "dst") sc.destination.name = v;
        else if (k == "src_lat") sc.source.latitude_deg = to_double(s, k, v), has[0] = true;
        else if (k == "src_lon") sc.source.longitude_deg = to_double(s, k, v), has[1] = true;
        else if (k == "dst_lat") sc.destination.latitude_deg = to_double(s, k, v), has[2] = true;
        else if (k == "dst_lon") sc.destination.longitude_deg = to_double(s, k, v), has[3] = true;
        else if (k == "src_alt_km") sc.source.altitude_km = to_double(s, k, v);
        else if (k == "dst_alt_km") sc.destination.altitude_km = to_double(s, k, v);
        else return false;
        return true;
      });
      if (!(has[0] && has[1] && has[2] && has[3])) {
        throw ConfigError("[" + s + "] needs src_lat, src_lon, dst_lat and dst_lon");
      }
      if (sc.source.name.empty()) sc.source.name = sc.name + "-src";
      if (sc.destination.name.empty()) sc.destination.name = sc.name + "-dst";
      custom.push_back(std::move(sc));
    } else if (s == "walker") {
      WalkerSpec w;
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k == "planes") w.planes = static_cast<int>(to_int(s, k, v));
        else if (k == "sats") w.sats_per_plane = static_cast<int>(to_int(s, k, v));
        else if (k == "altitude_km") w.altitude_km = to_double(s, k, v);
        else if (k == "inclination_deg") w.inclination_deg = to_double(s, k, v);
        else if (k == "raan_jitter_deg") w.raan_jitter_deg = to_double(s, k, v);
        else if (k == "phase_jitter_deg") w.phase_jitter_deg = to_double(s, k, v);
        else if (k == "phasing") w.phasing = static_cast<int>(to_int(s, k, v));
        else if (k == "epoch") w.epoch = parse_utc(v);
        else return false;
        return true;
      });
      cfg.walker = w;
    } else if (s == "output") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k == "path") cfg.output = v;
        else if (k == "format") cfg.format = parse_output_format(v);
        else return false;
        return true;
      });
    } else if (s == "run") {
      read_section(s, values, [&](const std::string& k, const std::string& v) {
        if (k != "seed") return false;
        const auto seed = to_int(s, k, v);
        if (seed < 0) throw ConfigError("[run] seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(seed);
        return true;
      });
    } else {
      throw ConfigError(origin + ": unknown section [" + s + "]");
    }
  }

  // Custom scenarios replace the built-in set unless the preset is asked for explicitly.
  if (preset == "none" || (!preset && !custom.empty())) cfg.scenarios.clear();
  cfg.scenarios.insert(cfg.scenarios.end(), custom.begin(), custom.end());
  if (cfg.walker) cfg.walker->seed = cfg.seed;
  return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_config(in, path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Records from the configured source: walker, then file, then fetch URL.
inline std::vector<TleRecord> load_records(const RunConfig& cfg) {
  if (cfg.walker) {
    WalkerSpec w = *cfg.walker;
    w.seed = cfg.seed;
    return synthetic_walker(w);
  }
  TleParseOptions opts;
  opts.permissive_checksum = cfg.permissive_checksum;
  if (!cfg.tle_file.empty()) return parse_tle(read_text_file(cfg.tle_file), opts);
  if (!cfg.fetch_url.empty()) {
    return parse_tle(fetch_tle(cfg.fetch_url, std::chrono::duration<double>(cfg.fetch_timeout_s)), opts);
  }
  throw ConfigError("no constellation source configured");
}

inline UtcInstant start_instant(const RunConfig& cfg, const std::vector<TleRecord>& records) {
  if (cfg.start) return *cfg.start;
  if (records.empty()) throw ConfigError("cannot derive a start time from an empty TLE set");
  UtcInstant latest = records.front().epoch;
  for (const auto& r : records) latest = std::max(latest, r.epoch);
  return latest;
}

inline ExperimentConfig experiment_config(const RunConfig& cfg) {
  ExperimentConfig e;
  e.visibility = cfg.visibility;
  e.radio = cfg.radio;
  e.topology = cfg.topology;
  e.topology.score_horizon_slots = score_horizon_slots(cfg);
  e.route_weight = cfg.route_weight;
  return e;
}

}  // namespace dotd
