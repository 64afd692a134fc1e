#pragma once

// Per-slot inter-satellite link assessment and the time-expanded graph built
// from it. Every visible pair carries capacity S, latency L and, once
// normalized against the running maxima, the link cost
//
//   A = w1 * S/S_max + w2 * (1 - L/L_max) + (1 - w1 - w2) * phi_prev / U
//
// which is the edge weight of the DTEG.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dotd/error.hpp"
#include "dotd/geometry.hpp"
#include "dotd/link_budget.hpp"
#include "dotd/orbital.hpp"

namespace dotd {

using SatIndex = std::uint32_t;

/// A visible satellite pair at one slot (i < j).
struct PairLink {
  SatIndex i = 0;
  SatIndex j = 0;
  double distance_km = 0.0;
  double capacity_bps = 0.0;
  double latency_s = 0.0;
};

/// Algorithm-independent assessment of one slot: every pair passing the
/// atmosphere-clearance and range checks, ordered by (i, j).
struct SlotLinks {
  std::size_t slot = 0;
  std::size_t satellite_count = 0;
  std::vector<PairLink> visible;
};

inline SlotLinks assess_slot(const SatelliteSnapshot& snap, const VisibilityConfig& vis, const RadioConfig& radio) {
  SlotLinks out;
  out.slot = snap.slot;
  out.satellite_count = snap.size();
  const double d_max_sq = vis.d_max_km * vis.d_max_km;
  const auto m = static_cast<SatIndex>(snap.size());
  for (SatIndex i = 0; i < m; ++i) {
    const Vec3& pi = snap.positions[i];
    for (SatIndex j = i + 1; j < m; ++j) {
      const Vec3 delta = pi - snap.positions[j];
      if (dot(delta, delta) >= d_max_sq) continue;
      const double d = delta.norm();
      if (!isl_visible(snap.radii[i], snap.radii[j], d, vis) || d <= 0.0) continue;
      out.visible.push_back({i, j, d, isl_capacity(d, radio), isl_latency(d)});
    }
  }
  return out;
}

struct RunningMax {
  double capacity_bps = 0.0;
  double latency_s = 0.0;

  bool operator==(const RunningMax&) const = default;
};

/// Folds this slot's visible pairs into the maxima (never decreases).
inline RunningMax update_running_max(RunningMax maxes, std::span<const PairLink> visible) {
  for (const auto& p : visible) {
    maxes.capacity_bps = std::max(maxes.capacity_bps, p.capacity_bps);
    maxes.latency_s = std::max(maxes.latency_s, p.latency_s);
  }
  return maxes;
}

struct LinkWeights {
  double capacity = 0.4;  // w1
  double latency = 0.4;   // w2

  double churn() const { return 1.0 - capacity - latency; }
};

inline void validate(const LinkWeights& w) {
  if (!(w.capacity >= 0.0 && w.capacity <= 1.0) || !(w.latency >= 0.0 && w.latency <= 1.0) ||
      !(w.capacity + w.latency <= 1.0)) {
    throw ConfigError("weights need w1, w2 in [0, 1] and w1 + w2 <= 1");
  }
}

struct NormalizedMetrics {
  double capacity = 0.0;  // S / S_max
  double latency = 0.0;   // L / L_max
  double churn = 0.0;     // phi_prev / U
};

inline NormalizedMetrics normalize(double capacity_bps, double latency_s, bool linked_before, const RunningMax& maxes,
                                   unsigned max_links) {
  if (!(maxes.capacity_bps > 0.0) || !(maxes.latency_s > 0.0)) {
    throw DomainError("normalization against a zero running maximum");
  }
  return {capacity_bps / maxes.capacity_bps, latency_s / maxes.latency_s,
          (linked_before ? 1.0 : 0.0) / static_cast<double>(max_links)};
}

inline double link_cost(const NormalizedMetrics& n, const LinkWeights& w) {
  validate(w);
  return w.capacity * n.capacity + w.latency * (1.0 - n.latency) + w.churn() * n.churn;
}

/// Score of selecting `j` as seen from its partner: cost plus j's historical score, zero when not visible.
inline double score(double cost, double previous_partner_score, bool visible) {
  return visible ? cost + previous_partner_score : 0.0;
}

/// Fully scored pair at one slot.
struct LinkAssessment {
  SatIndex i = 0;
  SatIndex j = 0;
  std::size_t slot = 0;
  double distance_km = 0.0;
  bool visible = false;
  double capacity_bps = 0.0;
  double latency_s = 0.0;
  NormalizedMetrics normalized;
  double cost = 0.0;      // A
  double alpha_ij = 0.0;  // A + Pi_j(t-1): i's view of j
  double alpha_ji = 0.0;  // A + Pi_i(t-1): j's view of i
};

struct DtegLink {
  SatIndex from = 0;  // node v_{from, slot}
  SatIndex to = 0;    // node v_{to, slot + 1}
  std::size_t slot = 0;
  double cost = 0.0;
};

/// Layered graph with one node per satellite per slot; links join layer t to t + 1.
struct Dteg {
  std::size_t satellite_count = 0;
  std::size_t layer_count = 0;  // slot_count + 1
  std::vector<DtegLink> links;

  std::size_t node_count() const { return satellite_count * layer_count; }
  std::size_t node_id(SatIndex sat, std::size_t slot) const { return slot * satellite_count + sat; }

  std::size_t links_in_layer(std::size_t slot) const {
    return static_cast<std::size_t>(
        std::count_if(links.begin(), links.end(), [slot](const DtegLink& l) { return l.slot == slot; }));
  }
};

/// `assessments[t]` holds slot t's scored pairs; invisible entries are skipped.
inline Dteg build_dteg(std::span<const SatelliteSnapshot> snapshots,
                       std::span<const std::vector<LinkAssessment>> assessments) {
  Dteg g;
  g.layer_count = snapshots.size();
  g.satellite_count = snapshots.empty() ? 0 : snapshots.front().size();
  const std::size_t last = snapshots.empty() ? 0 : snapshots.size() - 1;
  for (std::size_t t = 0; t < std::min(last, assessments.size()); ++t) {
    for (const auto& a : assessments[t]) {
      if (a.visible) g.links.push_back({a.i, a.j, t, a.cost});
    }
  }
  return g;
}

}  // namespace dotd
