#pragma once

#include <optional>
#include <vector>

#include "gbp/model.hpp"

namespace gbp {

enum class ZoneKind { kTriangle, kDiamond, kLinkedTriangles };

const char* to_string(ZoneKind kind);

/// A triangle-carrying part of a subcubic graph: a lone triangle (3 edges),
/// two triangles sharing an edge (K4 minus an edge, 5 edges), or two disjoint
/// triangles joined by two independent edges (8 edges).
struct Zone {
  ZoneKind kind = ZoneKind::kTriangle;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

/// Zones of a graph with maximum degree three. Every triangle lies in exactly
/// one zone and zones are pairwise edge-disjoint. Throws Inapplicable for
/// larger degrees or for the isolated K4 and prism, which preprocessing removes.
std::vector<Zone> find_zones(const Instance& instance);

/// Cheapest F_X with forced zone edges ⊆ F_X ⊆ E(X) that satisfies every
/// habitat meeting the zone, assuming all habitat edges outside the zone are
/// present.
std::vector<EdgeId> optimize_zone(const Instance& instance, const Zone& zone);

/// Minimum-cost solution for graphs of maximum degree three; nullopt if the
/// instance is infeasible. Throws Inapplicable for larger degrees.
std::optional<Optimum> solve_deg3(const Instance& instance);

/// Same, also returning the zones of the reduced instance.
struct Deg3Result {
  std::optional<Optimum> optimum;
  Instance reduced;
  std::vector<Zone> zones;
};
/// With small_components off, the small-component rule is skipped so that
/// every zone reaches the zone optimizer.
Deg3Result solve_deg3_traced(const Instance& instance, bool small_components = true);

}  // namespace gbp
