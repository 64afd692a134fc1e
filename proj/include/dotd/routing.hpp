#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dotd/error.hpp"
#include "dotd/geometry.hpp"
#include "dotd/link_budget.hpp"
#include "dotd/orbital.hpp"
#include "dotd/topology.hpp"

namespace dotd {

/// Undirected graph with non-negative edge weights.
class WeightedGraph {
 public:
  struct Edge {
    SatIndex to;
    double weight;
  };

  explicit WeightedGraph(std::size_t nodes = 0) : adj_(nodes) {}

  void add_edge(SatIndex u, SatIndex v, double w) {
    if (w < 0.0) throw DomainError("negative edge weight");
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
  }

  std::size_t size() const { return adj_.size(); }
  const std::vector<Edge>& edges(SatIndex u) const { return adj_[u]; }

 private:
  std::vector<std::vector<Edge>> adj_;
};

struct Path {
  std::vector<SatIndex> nodes;
  double cost = 0.0;

  std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// Dijkstra. Ties on cost prefer fewer hops, then the lexicographically smallest
/// node sequence. Costs are accumulated source-outward. Empty when unreachable.
inline std::optional<Path> shortest_path(const WeightedGraph& g, SatIndex src, SatIndex dst) {
  const std::size_t n = g.size();
  if (src >= n || dst >= n) throw DomainError("shortest path endpoint out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::size_t> hops(n, 0);
  std::vector<std::vector<SatIndex>> path(n);
  std::vector<bool> done(n, false);

  using Entry = std::tuple<double, std::size_t, SatIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[src] = 0.0;
  path[src] = {src};
  queue.emplace(0.0, 0, src);
  while (!queue.empty()) {
    const auto [c, h, u] = queue.top();
    queue.pop();
    if (done[u] || c != dist[u] || h != hops[u]) continue;
    done[u] = true;
    if (u == dst) break;
    for (const auto& e : g.edges(u)) {
      if (done[e.to]) continue;
      const double cand = dist[u] + e.weight;
      const std::size_t cand_hops = hops[u] + 1;
      bool better = cand < dist[e.to] || (cand == dist[e.to] && cand_hops < hops[e.to]);
      if (!better && cand == dist[e.to] && cand_hops == hops[e.to]) {
        // Same cost and length: compare sequences, which share the prefix up to u's path.
        std::vector<SatIndex> seq = path[u];
        seq.push_back(e.to);
        better = seq < path[e.to];
      }
      if (better) {
        dist[e.to] = cand;
        hops[e.to] = cand_hops;
        path[e.to] = path[u];
        path[e.to].push_back(e.to);
        queue.emplace(cand, cand_hops, e.to);
      }
    }
  }
  if (!done[dst]) return std::nullopt;
  return Path{std::move(path[dst]), dist[dst]};
}

enum class RouteWeight {
  kLatency,  // propagation delay of each ISL
  kScore,    // 1 - link cost A
};

struct RoutingConfig {
  VisibilityConfig visibility;
  RadioConfig radio;
  RouteWeight weight = RouteWeight::kLatency;
};

inline WeightedGraph topology_graph(const TopologySnapshot& topo, const SatelliteSnapshot& snap, RouteWeight weight) {
  WeightedGraph g(topo.satellite_count());
  for (const auto& l : topo.links()) {
    const double w = weight == RouteWeight::kLatency
                         ? isl_latency(isl_distance(snap.positions[l.a], snap.positions[l.b]))
                         : std::max(0.0, 1.0 - l.cost);
    g.add_edge(l.a, l.b, w);
  }
  return g;
}

inline std::optional<Path> shortest_path(const TopologySnapshot& topo, const SatelliteSnapshot& snap, SatIndex src,
                                         SatIndex dst, RouteWeight weight = RouteWeight::kLatency) {
  return shortest_path(topology_graph(topo, snap, weight), src, dst);
}

class AttachError : public Error {
 public:
  explicit AttachError(const std::string& station)
      : Error("ground station '" + station + "' sees no satellite"), station_(station) {}
  const std::string& station() const { return station_; }

 private:
  std::string station_;
};

struct Attachment {
  SatIndex satellite = 0;
  double elevation_deg = 0.0;
  double slant_range_km = 0.0;
  double quality = 0.0;  // delay + 1/capacity, seconds
};

/// Visible satellite with the lowest link quality value. Ties go to the lowest
/// catalog id (or index when `catalog_ids` is empty).
inline std::optional<Attachment> try_attach_gs(const GroundStation& gs, const SatelliteSnapshot& snap,
                                               const RoutingConfig& cfg,
                                               std::span<const std::int64_t> catalog_ids = {}) {
  const Vec3 station = ground_station_eci(gs, snap.instant);
  std::optional<Attachment> best;
  auto id_of = [&](SatIndex s) { return catalog_ids.empty() ? static_cast<std::int64_t>(s) : catalog_ids[s]; };
  for (SatIndex s = 0; s < snap.size(); ++s) {
    const double elevation = elevation_angle(station, snap.positions[s]);
    const auto q = gs_link_quality(elevation, snap.radii[s], cfg.radio, cfg.visibility);
    if (!q) continue;
    if (!best || *q < best->quality || (*q == best->quality && id_of(s) < id_of(best->satellite))) {
      best = Attachment{s, elevation, slant_range(elevation, snap.radii[s]), *q};
    }
  }
  return best;
}

inline SatIndex attach_gs(const GroundStation& gs, const SatelliteSnapshot& snap, const RoutingConfig& cfg,
                          std::span<const std::int64_t> catalog_ids = {}) {
  const auto a = try_attach_gs(gs, snap, cfg, catalog_ids);
  if (!a) throw AttachError(gs.name);
  return a->satellite;
}

struct RouteResult {
  std::string source;
  std::string destination;
  SatIndex entry = 0;
  SatIndex exit = 0;
  std::vector<SatIndex> path;
  double isl_latency_s = 0.0;
  double total_latency_s = 0.0;  // ISLs plus both ground legs
  double mean_link_capacity_bps = 0.0;

  std::size_t satellite_count() const { return path.size(); }
  std::size_t isl_hops() const { return path.empty() ? 0 : path.size() - 1; }
};

enum class RouteStatus { kOk, kAttachFailed, kNoRoute };

inline const char* to_string(RouteStatus s) {
  switch (s) {
    case RouteStatus::kOk: return "ok";
    case RouteStatus::kAttachFailed: return "attach_failed";
    case RouteStatus::kNoRoute: return "no_route";
  }
  return "?";
}

struct RouteOutcome {
  RouteStatus status = RouteStatus::kOk;
  std::optional<RouteResult> result;
  std::string message;
};

inline RouteOutcome route(const GroundStation& src, const GroundStation& dst, const TopologySnapshot& topo,
                          const SatelliteSnapshot& snap, const RoutingConfig& cfg,
                          std::span<const std::int64_t> catalog_ids = {}) {
  const auto entry = try_attach_gs(src, snap, cfg, catalog_ids);
  if (!entry) return {RouteStatus::kAttachFailed, std::nullopt, AttachError(src.name).what()};
  const auto exit = try_attach_gs(dst, snap, cfg, catalog_ids);
  if (!exit) return {RouteStatus::kAttachFailed, std::nullopt, AttachError(dst.name).what()};

  const auto path = shortest_path(topo, snap, entry->satellite, exit->satellite, cfg.weight);
  if (!path) {
    return {RouteStatus::kNoRoute, std::nullopt,
            "no route between satellites " + std::to_string(entry->satellite) + " and " +
                std::to_string(exit->satellite)};
  }

  RouteResult r;
  r.source = src.name;
  r.destination = dst.name;
  r.entry = entry->satellite;
  r.exit = exit->satellite;
  r.path = path->nodes;
  double capacity_sum = 0.0;
  for (std::size_t k = 1; k < r.path.size(); ++k) {
    const double d = isl_distance(snap.positions[r.path[k - 1]], snap.positions[r.path[k]]);
    r.isl_latency_s += isl_latency(d);
    capacity_sum += isl_capacity(d, cfg.radio);
  }
  r.total_latency_s =
      r.isl_latency_s + propagation_delay(entry->slant_range_km) + propagation_delay(exit->slant_range_km);
  r.mean_link_capacity_bps = r.isl_hops() == 0 ? 0.0 : capacity_sum / static_cast<double>(r.isl_hops());
  return {RouteStatus::kOk, std::move(r), {}};
}

}  // namespace dotd
