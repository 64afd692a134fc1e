// dotd: command-line front end for the topology engine.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dotd/dotd.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBadConfig = 3,
  kBadTle = 4,
  kFetchFailed = 5,
};

struct Overrides {
  std::string config;
  std::optional<std::string> tle;
  std::optional<std::string> fetch_url;
  std::optional<std::string> start;
  std::optional<double> tau;
  std::optional<double> horizon;
  std::optional<std::string> algorithm;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<double> theta_min;
  std::optional<std::string> theta_max_mode;
  bool compat_alg1_order = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Run configuration file");
  cmd->add_option("--tle", o.tle, "TLE file (overrides the configured source)");
  cmd->add_option("--fetch-url", o.fetch_url, "Download TLEs from this URL");
  cmd->add_option("--start", o.start, "Start instant, YYYY-MM-DDTHH:MM:SSZ (default: newest TLE epoch)");
  cmd->add_option("--tau", o.tau, "Slot length in seconds");
  cmd->add_option("--horizon", o.horizon, "Simulated window in seconds");
  cmd->add_option("--algorithm", o.algorithm, "Comma-separated list of dotd, greedy, plusgrid");
  cmd->add_option("--output", o.output, "Output path, '-' for stdout");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--seed", o.seed, "Seed for synthetic constellations");
  cmd->add_option("--theta-min", o.theta_min, "Minimum ground-station elevation, degrees");
  cmd->add_option("--theta-max-mode", o.theta_max_mode, "computed or fixed90");
  cmd->add_flag("--compat-alg1-order", o.compat_alg1_order, "Per-satellite link selection order");
}

dotd::RunConfig resolve(const Overrides& o) {
  dotd::RunConfig cfg = o.config.empty() ? dotd::RunConfig{} : dotd::load_config(o.config);
  if (o.tle) {
    cfg.tle_file = *o.tle;
    cfg.fetch_url.clear();
    cfg.walker.reset();
  }
  if (o.fetch_url) {
    cfg.fetch_url = *o.fetch_url;
    if (!o.tle) cfg.tle_file.clear();
    cfg.walker.reset();
  }
  if (o.start) cfg.start = dotd::parse_utc(*o.start);
  if (o.tau) cfg.tau_s = *o.tau;
  if (o.horizon) cfg.horizon_s = *o.horizon;
  if (o.algorithm) cfg.algorithms = dotd::parse_algorithm_list(*o.algorithm);
  if (o.output) cfg.output = *o.output;
  if (o.format) cfg.format = dotd::parse_output_format(*o.format);
  if (o.seed) cfg.seed = *o.seed;
  if (o.theta_min) cfg.visibility.theta_min_deg = *o.theta_min;
  if (o.theta_max_mode) cfg.visibility.theta_max_mode = dotd::config_detail::parse_theta_max_mode(*o.theta_max_mode);
  if (o.compat_alg1_order) cfg.topology.order = dotd::SelectionOrder::kPerSatellite;
  dotd::validate(cfg);
  return cfg;
}

void write_text(const std::string& destination, const std::string& text) {
  if (destination.empty() || destination == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw dotd::Error("cannot open '" + destination + "' for writing");
  out << text;
  if (!out.flush()) throw dotd::Error("failed writing '" + destination + "'");
}

struct Prepared {
  dotd::RunConfig cfg;
  std::vector<dotd::TleRecord> records;
  dotd::TimeGrid grid;
};

Prepared prepare(const Overrides& o) {
  Prepared p{resolve(o), {}, {}};
  p.records = dotd::load_records(p.cfg);
  p.grid = dotd::make_time_grid(dotd::start_instant(p.cfg, p.records), p.cfg.tau_s, p.cfg.horizon_s);
  const auto stale = dotd::records_outside_validity(p.records, p.grid);
  if (!stale.empty()) {
    std::cerr << "warning: " << stale.size() << " record(s) have epochs more than 7 days from the start time\n";
  }
  return p;
}

int run_fetch(const Overrides& o, double timeout_s) {
  const std::string url = o.fetch_url ? *o.fetch_url : (o.config.empty() ? "" : dotd::load_config(o.config).fetch_url);
  if (url.empty()) throw dotd::ConfigError("fetch needs --fetch-url or [tle] fetch_url");
  const std::string body = dotd::fetch_tle(url, std::chrono::duration<double>(timeout_s));
  const auto records = dotd::parse_tle(body);
  write_text(o.output.value_or("-"), body);
  std::cerr << "fetched " << records.size() << " record(s)\n";
  return kOk;
}

int run_topology(const Overrides& o) {
  const Prepared p = prepare(o);
  std::ostringstream out;
  out << "algorithm,slot,i,j,catalog_i,catalog_j\n";
  auto sink = [&](dotd::Algorithm a, const dotd::TopologySnapshot& topo) {
    for (const auto& l : topo.links()) {
      out << dotd::to_string(a) << ',' << topo.slot() << ',' << l.a << ',' << l.b << ','
          << p.records[l.a].catalog_id << ',' << p.records[l.b].catalog_id << '\n';
    }
  };
  dotd::run_experiment(p.records, p.grid, {}, p.cfg.algorithms, dotd::experiment_config(p.cfg), sink);
  write_text(p.cfg.output, out.str());
  return kOk;
}

int run_route(const Overrides& o, bool churn_only) {
  const Prepared p = prepare(o);
  const std::vector<dotd::Scenario> none;
  auto rows = dotd::run_experiment(p.records, p.grid, churn_only ? none : p.cfg.scenarios, p.cfg.algorithms,
                                   dotd::experiment_config(p.cfg));
  dotd::emit(rows, p.cfg.format, p.cfg.output);
  return kOk;
}

struct WalkerOptions {
  int planes = 1;
  int sats = 1;
  double altitude = 550.0;
  double inclination = 53.0;
  std::optional<double> raan_jitter;
  std::optional<double> phase_jitter;
  double jitter = 0.0;
  int phasing = 1;
  std::uint64_t seed = 1;
  std::optional<std::string> epoch;
  std::string output = "-";
};

int run_walker(const WalkerOptions& w) {
  dotd::WalkerSpec spec;
  spec.planes = w.planes;
  spec.sats_per_plane = w.sats;
  spec.altitude_km = w.altitude;
  spec.inclination_deg = w.inclination;
  spec.raan_jitter_deg = w.raan_jitter.value_or(w.jitter);
  spec.phase_jitter_deg = w.phase_jitter.value_or(w.jitter);
  spec.phasing = w.phasing;
  spec.seed = w.seed;
  if (w.epoch) spec.epoch = dotd::parse_utc(*w.epoch);
  write_text(w.output, dotd::format_tle(dotd::synthetic_walker(spec)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO inter-satellite topology design and routing"};
  app.name("dotd");
  app.require_subcommand(1);

  Overrides fetch_opts, topo_opts, route_opts, churn_opts;
  double fetch_timeout = 30.0;
  auto* fetch = app.add_subcommand("fetch", "Download a TLE set to a file");
  fetch->add_option("--config", fetch_opts.config, "Run configuration file");
  fetch->add_option("--fetch-url", fetch_opts.fetch_url, "TLE endpoint");
  fetch->add_option("--output", fetch_opts.output, "Destination file, '-' for stdout");
  fetch->add_option("--timeout", fetch_timeout, "Timeout in seconds")->check(CLI::PositiveNumber);

  auto* topology = app.add_subcommand("topology", "Write the per-slot ISL edge list");
  add_common(topology, topo_opts);
  auto* route = app.add_subcommand("route", "Route the configured scenarios and write metrics");
  add_common(route, route_opts);
  auto* churn = app.add_subcommand("churn", "Write the persistent-link series");
  add_common(churn, churn_opts);

  WalkerOptions walker_opts;
  auto* walker = app.add_subcommand("walker", "Generate a synthetic Walker-delta TLE file");
  walker->add_option("--planes", walker_opts.planes, "Orbital planes")->required();
  walker->add_option("--sats", walker_opts.sats, "Satellites per plane")->required();
  walker->add_option("--altitude", walker_opts.altitude, "Altitude, km");
  walker->add_option("--inclination", walker_opts.inclination, "Inclination, degrees");
  walker->add_option("--raan-jitter", walker_opts.raan_jitter, "Per-plane RAAN jitter, degrees");
  walker->add_option("--phase-jitter", walker_opts.phase_jitter, "Per-satellite phase jitter, degrees");
  walker->add_option("--jitter", walker_opts.jitter, "Default for both jitters, degrees");
  walker->add_option("--phasing", walker_opts.phasing, "Walker phasing factor F");
  walker->add_option("--seed", walker_opts.seed, "Jitter seed");
  walker->add_option("--epoch", walker_opts.epoch, "Epoch, YYYY-MM-DDTHH:MM:SSZ");
  walker->add_option("--output", walker_opts.output, "Destination file, '-' for stdout");

  if (argc <= 1) {
    std::cerr << app.help();
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fetch) return run_fetch(fetch_opts, fetch_timeout);
    if (*topology) return run_topology(topo_opts);
    if (*route) return run_route(route_opts, false);
    if (*churn) return run_route(churn_opts, true);
    if (*walker) return run_walker(walker_opts);
  } catch (const dotd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const dotd::TleParseError& e) {
    std::cerr << "TLE error: " << e.what() << '\n';
    return kBadTle;
  } catch (const dotd::FetchError& e) {
    std::cerr << "fetch error: " << e.what() << '\n';
    return kFetchFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
