#pragma once

// Degree-constrained ISL topologies: the score-propagating designer (DoTD),
// its memoryless variant (Greedy), and helpers shared with +Grid.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dotd/dteg.hpp"
#include "dotd/error.hpp"

namespace dotd {

struct IslLink {
  SatIndex a = 0;  // a < b
  SatIndex b = 0;
  double cost = 0.0;  // link cost A when the link was chosen

  bool operator==(const IslLink&) const = default;
};

/// Symmetric adjacency of one slot. Links are kept sorted by (a, b).
class TopologySnapshot {
 public:
  TopologySnapshot() = default;
  TopologySnapshot(std::size_t slot, std::size_t satellite_count)
      : slot_(slot), neighbors_(satellite_count) {}

  std::size_t slot() const { return slot_; }
  std::size_t satellite_count() const { return neighbors_.size(); }
  const std::vector<IslLink>& links() const { return links_; }
  std::size_t link_count() const { return links_.size(); }
  std::size_t degree(SatIndex s) const { return neighbors_[s].size(); }
  const std::vector<SatIndex>& neighbors(SatIndex s) const { return neighbors_[s]; }

  bool has_link(SatIndex x, SatIndex y) const {
    const auto& n = neighbors_[x];
    return std::find(n.begin(), n.end(), y) != n.end();
  }

  std::optional<double> cost(SatIndex x, SatIndex y) const {
    const IslLink key{std::min(x, y), std::max(x, y), 0.0};
    auto it = std::lower_bound(links_.begin(), links_.end(), key, link_order);
    if (it == links_.end() || it->a != key.a || it->b != key.b) return std::nullopt;
    return it->cost;
  }

  /// Adds an undirected link; callers enforce degree limits.
  void add_link(SatIndex x, SatIndex y, double cost) {
    if (x == y) throw DomainError("self link");
    const IslLink link{std::min(x, y), std::max(x, y), cost};
    auto it = std::lower_bound(links_.begin(), links_.end(), link, link_order);
    if (it != links_.end() && it->a == link.a && it->b == link.b) throw DomainError("duplicate link");
    links_.insert(it, link);
    neighbors_[x].push_back(y);
    neighbors_[y].push_back(x);
  }

  bool operator==(const TopologySnapshot&) const = default;

 private:
  static bool link_order(const IslLink& l, const IslLink& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); }

  std::size_t slot_ = 0;
  std::vector<IslLink> links_;
  std::vector<std::vector<SatIndex>> neighbors_;
};

enum class SelectionOrder {
  kGlobal,      // one edge list sorted by score, ties by (min id, max id)
  kPerSatellite,  // satellites in catalog order each take their best remaining partners
};

enum class Algorithm { kDotd, kGreedy, kPlusGrid };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kDotd: return "dotd";
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kPlusGrid: return "plusgrid";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "dotd") return Algorithm::kDotd;
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "plusgrid" || name == "+grid") return Algorithm::kPlusGrid;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected dotd, greedy or plusgrid)");
}

struct TopologyConfig {
  LinkWeights weights;
  unsigned max_links = 4;  // U
  SelectionOrder order = SelectionOrder::kGlobal;
  /// Scores and running maxima restart every this many slots; 0 never restarts.
  std::size_t score_horizon_slots = 0;
  double plane_raan_tolerance_deg = 2.0;
  double plane_inclination_tolerance_deg = 1.0;
};

inline void validate(const TopologyConfig& cfg) {
  validate(cfg.weights);
  if (cfg.max_links == 0) throw ConfigError("max links per satellite must be at least 1");
  if (!(cfg.plane_raan_tolerance_deg >= 0.0) || !(cfg.plane_inclination_tolerance_deg >= 0.0)) {
    throw ConfigError("plane clustering tolerances must be non-negative");
  }
}

/// Candidate pair with both directed scores; symmetric inputs have alpha_ij == alpha_ji.
struct ScoredPair {
  SatIndex i = 0;
  SatIndex j = 0;
  double cost = 0.0;
  double alpha_ij = 0.0;
  double alpha_ji = 0.0;
};

/// Greedy degree-constrained matching on descending score. A pair's weight
/// in global order is the stronger of its two directed scores.
inline TopologySnapshot select_links(std::span<const ScoredPair> candidates, std::size_t satellite_count,
                                     unsigned max_links, std::size_t slot = 0,
                                     SelectionOrder order = SelectionOrder::kGlobal) {
  TopologySnapshot topo(slot, satellite_count);
  if (order == SelectionOrder::kGlobal) {
    struct Entry {
      double weight;
      SatIndex lo, hi;
      double cost;
    };
    std::vector<Entry> edges;
    edges.reserve(candidates.size());
    for (const auto& c : candidates) {
      const double w = std::max(c.alpha_ij, c.alpha_ji);
      if (w > 0.0) edges.push_back({w, std::min(c.i, c.j), std::max(c.i, c.j), c.cost});
    }
    std::sort(edges.begin(), edges.end(), [](const Entry& l, const Entry& r) {
      if (l.weight != r.weight) return l.weight > r.weight;
      return std::tie(l.lo, l.hi) < std::tie(r.lo, r.hi);
    });
    for (const auto& e : edges) {
      if (topo.degree(e.lo) < max_links && topo.degree(e.hi) < max_links) topo.add_link(e.lo, e.hi, e.cost);
    }
    return topo;
  }

  // Per-satellite order: satellite s ranks partners by its own directed score.
  struct Directed {
    SatIndex partner;
    double alpha;
    double cost;
  };
  std::vector<std::vector<Directed>> views(satellite_count);
  for (const auto& c : candidates) {
    if (c.alpha_ij > 0.0) views[c.i].push_back({c.j, c.alpha_ij, c.cost});
    if (c.alpha_ji > 0.0) views[c.j].push_back({c.i, c.alpha_ji, c.cost});
  }
  for (SatIndex s = 0; s < satellite_count; ++s) {
    auto& v = views[s];
    std::sort(v.begin(), v.end(), [](const Directed& l, const Directed& r) {
      if (l.alpha != r.alpha) return l.alpha > r.alpha;
      return l.partner < r.partner;
    });
    for (const auto& d : v) {
      if (topo.degree(s) >= max_links) break;
      if (topo.degree(d.partner) < max_links && !topo.has_link(s, d.partner)) topo.add_link(s, d.partner, d.cost);
    }
  }
  return topo;
}

/// Historical score per satellite after one slot.
struct ScoreTable {
  std::size_t slot = 0;
  std::vector<double> values;
};

/// Pi_i = (1/U) * sum over chosen partners j of (A_ij + Pi_j(previous)).
inline ScoreTable update_scores(const ScoreTable& previous, const TopologySnapshot& topo, unsigned max_links) {
  ScoreTable next{topo.slot(), std::vector<double>(topo.satellite_count(), 0.0)};
  for (const auto& link : topo.links()) {
    next.values[link.a] += link.cost + previous.values[link.b];
    next.values[link.b] += link.cost + previous.values[link.a];
  }
  for (double& v : next.values) v /= static_cast<double>(max_links);
  return next;
}

/// Score-driven designer stepping through slots in order. kDotd accumulates
/// partner scores; kGreedy uses the current link cost alone.
class ScoreDrivenDesigner {
 public:
  ScoreDrivenDesigner(Algorithm mode, TopologyConfig cfg) : mode_(mode), cfg_(std::move(cfg)) {
    if (mode_ == Algorithm::kPlusGrid) throw ConfigError("+Grid is not score driven");
    validate(cfg_);
  }

  /// When enabled, the assessments of the last step are retained.
  void record_assessments(bool on) { record_ = on; }

  TopologySnapshot step(const SlotLinks& layer) {
    const std::size_t m = layer.satellite_count;
    if (scores_.values.size() != m) scores_.values.assign(m, 0.0);
    if (cfg_.score_horizon_slots > 0 && local_slot_ == cfg_.score_horizon_slots) {
      local_slot_ = 0;
      maxes_ = {};
      scores_.values.assign(m, 0.0);
    }

    maxes_ = update_running_max(maxes_, layer.visible);
    std::vector<ScoredPair> candidates;
    candidates.reserve(layer.visible.size());
    if (record_) last_.clear();
    const bool accumulate = mode_ == Algorithm::kDotd;
    for (const auto& p : layer.visible) {
      const bool linked = previous_ && previous_->has_link(p.i, p.j);
      const NormalizedMetrics n = normalize(p.capacity_bps, p.latency_s, linked, maxes_, cfg_.max_links);
      const double a = link_cost(n, cfg_.weights);
      const double a_ij = score(a, accumulate ? scores_.values[p.j] : 0.0, true);
      const double a_ji = score(a, accumulate ? scores_.values[p.i] : 0.0, true);
      candidates.push_back({p.i, p.j, a, a_ij, a_ji});
      if (record_) {
        last_.push_back({p.i, p.j, layer.slot, p.distance_km, true, p.capacity_bps, p.latency_s, n, a, a_ij, a_ji});
      }
    }
    TopologySnapshot topo = select_links(candidates, m, cfg_.max_links, layer.slot, cfg_.order);

    // The first slot of a horizon is the initial state: its scores stay zero.
    if (accumulate && local_slot_ > 0) {
      scores_ = update_scores(scores_, topo, cfg_.max_links);
    } else {
      scores_.slot = layer.slot;
    }
    ++local_slot_;
    previous_ = topo;
    return topo;
  }

  const RunningMax& running_max() const { return maxes_; }
  const ScoreTable& scores() const { return scores_; }
  const std::vector<LinkAssessment>& last_assessments() const { return last_; }
  /// Slots since the last horizon restart, counting the one just stepped.
  std::size_t local_slot() const { return local_slot_; }

 private:
  Algorithm mode_;
  TopologyConfig cfg_;
  RunningMax maxes_;
  ScoreTable scores_;
  std::optional<TopologySnapshot> previous_;
  std::size_t local_slot_ = 0;
  bool record_ = false;
  std::vector<LinkAssessment> last_;
};

namespace detail {

inline std::vector<TopologySnapshot> run_score_driven(Algorithm mode, std::span<const SatelliteSnapshot> snapshots,
                                                      const VisibilityConfig& vis, const RadioConfig& radio,
                                                      const TopologyConfig& cfg) {
  if (snapshots.empty()) throw ConfigError("topology run needs at least one snapshot");
  ScoreDrivenDesigner designer(mode, cfg);
  std::vector<TopologySnapshot> out;
  out.reserve(snapshots.size());
  for (const auto& snap : snapshots) out.push_back(designer.step(assess_slot(snap, vis, radio)));
  return out;
}

}  // namespace detail

inline std::vector<TopologySnapshot> dotd_run(std::span<const SatelliteSnapshot> snapshots, const VisibilityConfig& vis,
                                              const RadioConfig& radio, const TopologyConfig& cfg) {
  return detail::run_score_driven(Algorithm::kDotd, snapshots, vis, radio, cfg);
}

inline std::vector<TopologySnapshot> greedy_run(std::span<const SatelliteSnapshot> snapshots,
                                                const VisibilityConfig& vis, const RadioConfig& radio,
                                                const TopologyConfig& cfg) {
  return detail::run_score_driven(Algorithm::kGreedy, snapshots, vis, radio, cfg);
}

/// Per-slot DoTD assessments, suitable for build_dteg.
inline std::vector<std::vector<LinkAssessment>> assess_series(std::span<const SatelliteSnapshot> snapshots,
                                                              const VisibilityConfig& vis, const RadioConfig& radio,
                                                              const TopologyConfig& cfg) {
  ScoreDrivenDesigner designer(Algorithm::kDotd, cfg);
  designer.record_assessments(true);
  std::vector<std::vector<LinkAssessment>> out;
  for (const auto& snap : snapshots) {
    designer.step(assess_slot(snap, vis, radio));
    out.push_back(designer.last_assessments());
  }
  return out;
}

/// Links present in both snapshots.
inline std::size_t persistent_links(const TopologySnapshot& before, const TopologySnapshot& after) {
  std::size_t count = 0;
  for (const auto& l : after.links()) {
    if (l.a < before.satellite_count() && l.b < before.satellite_count() && before.has_link(l.a, l.b)) ++count;
  }
  return count;
}

/// Entry k counts links kept from slot k to slot k + 1.
inline std::vector<std::size_t> count_persistent_links(std::span<const TopologySnapshot> series) {
  if (series.size() < 2) throw ConfigError("persistent-link count needs at least two snapshots");
  std::vector<std::size_t> out;
  out.reserve(series.size() - 1);
  for (std::size_t t = 1; t < series.size(); ++t) out.push_back(persistent_links(series[t - 1], series[t]));
  return out;
}

/// Checks degree, symmetry, atmosphere clearance and range for one slot; returns violation descriptions.
inline std::vector<std::string> constraint_violations(const TopologySnapshot& topo, const SatelliteSnapshot& snap,
                                                      const VisibilityConfig& vis, unsigned max_links) {
  std::vector<std::string> out;
  const std::string at = " at slot " + std::to_string(topo.slot());
  for (SatIndex s = 0; s < topo.satellite_count(); ++s) {
    if (topo.degree(s) > max_links) out.push_back("degree of " + std::to_string(s) + " exceeds U" + at);
    for (SatIndex n : topo.neighbors(s)) {
      if (!topo.has_link(n, s)) out.push_back("asymmetric link " + std::to_string(s) + "-" + std::to_string(n) + at);
    }
  }
  for (const auto& l : topo.links()) {
    const double d = isl_distance(snap.positions[l.a], snap.positions[l.b]);
    const std::string pair = std::to_string(l.a) + "-" + std::to_string(l.b);
    if (!(d < vis.d_max_km)) out.push_back("link " + pair + " exceeds D_max" + at);
    if (!(triangle_altitude(snap.radii[l.a], snap.radii[l.b], d) > vis.blocking_radius_km())) {
      out.push_back("link " + pair + " crosses the atmosphere" + at);
    }
  }
  return out;
}

}  // namespace dotd
