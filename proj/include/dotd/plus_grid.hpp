#pragma once

// +Grid baseline: two intra-plane neighbours (ahead and behind in phase) and
// two inter-plane neighbours in the adjacent planes of the RAAN ring.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "dotd/constants.hpp"
#include "dotd/dteg.hpp"
#include "dotd/orbital.hpp"
#include "dotd/tle.hpp"
#include "dotd/topology.hpp"

namespace dotd {

struct OrbitalPlane {
  double raan_deg = 0.0;         // of the seed member
  double inclination_deg = 0.0;  // of the seed member
  std::vector<SatIndex> members;
};

/// Planes in ring order (ascending RAAN) for one inclination shell.
struct PlaneShell {
  double inclination_deg = 0.0;
  std::vector<OrbitalPlane> planes;
};

inline double circular_difference_deg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

/// Clusters records into planes (|dRAAN| and |dInclination| within tolerance of
/// the plane's seed), then groups planes into inclination shells.
inline std::vector<PlaneShell> cluster_planes(std::span<const TleRecord> records, double raan_tol_deg,
                                              double incl_tol_deg) {
  std::vector<SatIndex> order(records.size());
  std::iota(order.begin(), order.end(), SatIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](SatIndex l, SatIndex r) {
    if (records[l].inclination_deg != records[r].inclination_deg) {
      return records[l].inclination_deg < records[r].inclination_deg;
    }
    return records[l].raan_deg < records[r].raan_deg;
  });

  std::vector<OrbitalPlane> planes;
  for (SatIndex s : order) {
    const auto& r = records[s];
    auto it = std::find_if(planes.begin(), planes.end(), [&](const OrbitalPlane& p) {
      return std::abs(p.inclination_deg - r.inclination_deg) <= incl_tol_deg &&
             circular_difference_deg(p.raan_deg, r.raan_deg) <= raan_tol_deg;
    });
    if (it == planes.end()) {
      planes.push_back({r.raan_deg, r.inclination_deg, {s}});
    } else {
      it->members.push_back(s);
    }
  }

  std::vector<PlaneShell> shells;
  for (auto& p : planes) {
    auto it = std::find_if(shells.begin(), shells.end(), [&](const PlaneShell& sh) {
      return std::abs(sh.inclination_deg - p.inclination_deg) <= incl_tol_deg;
    });
    if (it == shells.end()) {
      shells.push_back({p.inclination_deg, {}});
      it = shells.end() - 1;
    }
    std::sort(p.members.begin(), p.members.end());
    it->planes.push_back(std::move(p));
  }
  for (auto& sh : shells) {
    std::stable_sort(sh.planes.begin(), sh.planes.end(),
                     [](const OrbitalPlane& l, const OrbitalPlane& r) { return l.raan_deg < r.raan_deg; });
  }
  return shells;
}

class PlusGridDesigner {
 public:
  PlusGridDesigner(std::span<const TleRecord> records, VisibilityConfig vis, RadioConfig radio, TopologyConfig cfg)
      : vis_(vis),
        radio_(radio),
        cfg_(std::move(cfg)),
        shells_(cluster_planes(records, cfg_.plane_raan_tolerance_deg, cfg_.plane_inclination_tolerance_deg)) {
    validate(cfg_);
    for (const auto& r : records) {
      const double raan = deg2rad(r.raan_deg);
      const double inc = deg2rad(r.inclination_deg);
      const Vec3 node{std::cos(raan), std::sin(raan), 0.0};
      const Vec3 normal{std::sin(raan) * std::sin(inc), -std::cos(raan) * std::sin(inc), std::cos(inc)};
      node_.push_back(node);
      in_plane_.push_back(cross(normal, node));
    }
  }

  const std::vector<PlaneShell>& shells() const { return shells_; }

  /// `layer` supplies the slot's visible pairs, used for the running maxima behind link costs.
  TopologySnapshot step(const SatelliteSnapshot& snap, const SlotLinks& layer) {
    const std::size_t m = snap.size();
    if (cfg_.score_horizon_slots > 0 && local_slot_ == cfg_.score_horizon_slots) {
      local_slot_ = 0;
      maxes_ = {};
    }
    maxes_ = update_running_max(maxes_, layer.visible);

    TopologySnapshot topo(snap.slot, m);
    auto try_link = [&](SatIndex x, SatIndex y) {
      if (x == y || topo.has_link(x, y)) return;
      if (topo.degree(x) >= cfg_.max_links || topo.degree(y) >= cfg_.max_links) return;
      const double d = isl_distance(snap.positions[x], snap.positions[y]);
      if (!(d > 0.0) || !isl_visible(snap.radii[x], snap.radii[y], d, vis_)) return;
      topo.add_link(x, y, cost_of(x, y, d));
    };

    for (const auto& shell : shells_) {
      for (const auto& plane : shell.planes) {
        const auto ring = phase_order(plane, snap);
        const std::size_t n = ring.size();
        if (n < 2) continue;
        for (std::size_t k = 0; k < n; ++k) try_link(ring[k], ring[(k + 1) % n]);
      }
    }
    for (const auto& shell : shells_) {
      const std::size_t n = shell.planes.size();
      if (n < 2) continue;
      // A two-plane ring has both of its sides facing the same plane.
      const std::size_t pairings = n == 2 ? 2 : n;
      for (std::size_t k = 0; k < pairings; ++k) {
        pair_planes(shell.planes[k % n], shell.planes[(k + 1) % n], snap, topo, try_link);
      }
    }
    previous_ = topo;
    ++local_slot_;
    return topo;
  }

 private:
  std::vector<SatIndex> phase_order(const OrbitalPlane& plane, const SatelliteSnapshot& snap) const {
    std::vector<std::pair<double, SatIndex>> phased;
    for (SatIndex s : plane.members) {
      const Vec3& r = snap.positions[s];
      double u = std::atan2(dot(r, in_plane_[s]), dot(r, node_[s]));
      if (u < 0.0) u += constants::kTwoPi;
      phased.emplace_back(u, s);
    }
    std::sort(phased.begin(), phased.end());
    std::vector<SatIndex> out;
    for (const auto& [u, s] : phased) out.push_back(s);
    return out;
  }

  // One-to-one nearest-first pairing between two adjacent planes.
  template <typename TryLink>
  void pair_planes(const OrbitalPlane& left, const OrbitalPlane& right, const SatelliteSnapshot& snap,
                   const TopologySnapshot& topo, TryLink&& try_link) const {
    struct Cand {
      double d;
      SatIndex x, y;
    };
    std::vector<Cand> cands;
    for (SatIndex x : left.members) {
      for (SatIndex y : right.members) {
        if (x == y || topo.has_link(x, y)) continue;
        const double d = isl_distance(snap.positions[x], snap.positions[y]);
        if (d > 0.0 && isl_visible(snap.radii[x], snap.radii[y], d, vis_)) cands.push_back({d, x, y});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) {
      if (l.d != r.d) return l.d < r.d;
      return std::tie(l.x, l.y) < std::tie(r.x, r.y);
    });
    std::vector<SatIndex> used_left, used_right;
    for (const auto& c : cands) {
      if (std::find(used_left.begin(), used_left.end(), c.x) != used_left.end()) continue;
      if (std::find(used_right.begin(), used_right.end(), c.y) != used_right.end()) continue;
      used_left.push_back(c.x);
      used_right.push_back(c.y);
      try_link(c.x, c.y);
    }
  }

  double cost_of(SatIndex x, SatIndex y, double d) const {
    if (!(maxes_.capacity_bps > 0.0)) return 0.0;
    const bool linked = previous_ && previous_->has_link(x, y);
    return link_cost(normalize(isl_capacity(d, radio_), isl_latency(d), linked, maxes_, cfg_.max_links), cfg_.weights);
  }

  VisibilityConfig vis_;
  RadioConfig radio_;
  TopologyConfig cfg_;
  std::vector<PlaneShell> shells_;
  std::vector<Vec3> node_;
  std::vector<Vec3> in_plane_;
  RunningMax maxes_;
  std::optional<TopologySnapshot> previous_;
  std::size_t local_slot_ = 0;
};

inline std::vector<TopologySnapshot> plus_grid_run(std::span<const SatelliteSnapshot> snapshots,
                                                   std::span<const TleRecord> records, const VisibilityConfig& vis,
                                                   const RadioConfig& radio, const TopologyConfig& cfg) {
  if (snapshots.empty()) throw ConfigError("topology run needs at least one snapshot");
  if (records.size() != snapshots.front().size()) throw ConfigError("+Grid needs one TLE record per satellite");
  PlusGridDesigner designer(records, vis, radio, cfg);
  std::vector<TopologySnapshot> out;
  out.reserve(snapshots.size());
  for (const auto& snap : snapshots) out.push_back(designer.step(snap, assess_slot(snap, vis, radio)));
  return out;
}

}  // namespace dotd
