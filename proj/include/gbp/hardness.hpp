#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gbp/model.hpp"

namespace gbp {

/// Source of the gadget reductions: a connected 3-regular graph, optionally
/// with a clockwise rotation system.
struct VcInstance {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<std::vector<int>>> rotation;
  std::optional<int> k;
};

/// Throws InputError unless the graph is simple, connected and cubic, and,
/// when required or present, the rotation system is a planar embedding.
void validate_vc(const VcInstance& vc, bool require_rotation);

/// Plain undirected graph for the docking operation.
struct SimpleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

struct DockResult {
  SimpleGraph graph;
  /// Position of every vertex of the first and second input in the result.
  std::vector<int> first_map;
  std::vector<int> second_map;
};

/// Glues g and h by identifying d.first with d2.first and d.second with
/// d2.second. The two docked edges become one edge.
DockResult dock(const SimpleGraph& g, const SimpleGraph& h, std::pair<int, int> d, std::pair<int, int> d2);

enum class Construction { kOne = 1, kTwo = 2 };

struct DockRecord {
  int source_vertex;
  int pair_index;  // 1-based docking pair of the vertex gadget
  int source_edge;
  int edge_side;   // 0 or 1: which endpoint group of the edge gadget
};

/// Labels of a generated instance in terms of the source graph. Edge groups
/// hold edge ids of the generated instance.
struct GadgetMap {
  Construction construction = Construction::kOne;
  int source_vertices = 0;
  std::vector<std::pair<int, int>> source_edges;
  std::vector<std::vector<VertexId>> vertex_gadget;  // b^1.. per source vertex
  std::vector<std::vector<VertexId>> edge_gadget;    // a^1.. per source edge
  std::vector<std::vector<EdgeId>> top, bottom, vertex_star;
  /// endpoint_vertex[e][s] is the source vertex covered by endpoint_group[e][s].
  std::vector<std::array<int, 2>> endpoint_vertex;
  std::vector<std::array<std::vector<EdgeId>, 2>> endpoint_group;
  std::vector<std::vector<EdgeId>> edge_star;
  std::vector<std::vector<EdgeId>> docking_edges;  // both identified edges per edge gadget
  std::vector<bool> anti_crossing;
  std::vector<DockRecord> docking_log;
  /// Edges of every solution beyond the vertex-cover size: 5n + 4m or 5n + 7m.
  int target_offset = 0;
};

struct Reduction {
  Instance instance;
  GadgetMap map;
};

/// Unit-cost instance with maximum degree five and habitats of size at most three.
Reduction construct1(const VcInstance& vc);

/// Planar unit-cost instance with integer coordinates, maximum degree five
/// and habitats of size at most four. Requires a rotation system.
Reduction construct2(const VcInstance& vc);

/// Edge set of size target_offset + |cover| that solves the generated instance.
std::vector<EdgeId> map_vc_to_gbp(const GadgetMap& map, const std::vector<int>& cover);

/// Vertex cover of size at most |F| - target_offset from a feasible F.
std::vector<int> map_gbp_to_vc(const Instance& instance, const GadgetMap& map, std::span<const EdgeId> solution);

/// Minimum vertex cover by branching on a maximum-degree vertex.
std::vector<int> solve_vc_exact(const VcInstance& vc);

/// Straight-line drawing with integer coordinates of a planar graph, or
/// nullopt if the graph is not planar.
std::optional<std::vector<Point>> planar_drawing(int vertex_count, const std::vector<std::pair<int, int>>& edges);

/// Small connected cubic planar graphs with rotation systems: K4, the
/// triangular prism, and the cubic planar graphs on eight vertices.
std::vector<VcInstance> cubic_planar_fixtures();

}  // namespace gbp
