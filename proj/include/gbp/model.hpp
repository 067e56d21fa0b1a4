#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbp/geometry.hpp"

namespace gbp {

using Cost = std::int64_t;
using VertexId = int;
using EdgeId = int;
using HabitatId = int;

inline constexpr int kUnreachable = std::numeric_limits<int>::max();
inline constexpr int kDiameterBound = 2;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Cost cost = 0;
  bool forced = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A 2-diameter green bridges instance (G, c, H, F*, k) plus an optional
/// straight-line embedding. Edges are kept in canonical order (u < v, sorted
/// lexicographically) and an edge id is its index in that order.
struct Instance {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<VertexId>> habitats;
  std::optional<Cost> budget;
  std::optional<std::vector<Point>> embedding;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class ErrorCode {
  kParse,
  kVertexId,
  kEdgeId,
  kSelfLoop,
  kDuplicateEdge,
  kNegativeCost,
  kSmallHabitat,
  kRepeatedHabitatVertex,
  kEmbeddingSize,
  kEmbeddingCrossing,
  kCollinearHabitat,
  kNotCanonical,
};

const char* to_string(ErrorCode code);

class InputError : public std::runtime_error {
 public:
  InputError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a specialized solver's structural preconditions do not hold.
class Inapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceStats {
  int vertex_count = 0;
  int edge_count = 0;
  int max_degree = 0;
  int max_habitat_size = 0;
  int habitat_count = 0;
  bool is_planar_embedded = false;
};

/// Orients every edge as u < v, sorts the edge list and every habitat.
void canonicalize(Instance& instance);

/// Checks every structural invariant of an instance; throws InputError.
/// Edges must already be in canonical order.
InstanceStats validate(const Instance& instance);

/// canonicalize + validate.
Instance make_instance(int vertex_count, std::vector<Edge> edges,
                       std::vector<std::vector<VertexId>> habitats,
                       std::optional<Cost> budget = std::nullopt,
                       std::optional<std::vector<Point>> embedding = std::nullopt);

/// Id of edge {u, v} by binary search over the canonical edge list.
std::optional<EdgeId> find_edge(const Instance& instance, VertexId u, VertexId v);

struct Arc {
  VertexId to;
  EdgeId edge;
};

/// Adjacency lists of an instance; arcs are sorted by neighbor id.
class Adjacency {
 public:
  explicit Adjacency(const Instance& instance);

  std::span<const Arc> arcs(VertexId v) const {
    return {arcs_.data() + offset_[v], arcs_.data() + offset_[v + 1]};
  }
  int degree(VertexId v) const { return offset_[v + 1] - offset_[v]; }
  int max_degree() const;
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;
  int vertex_count() const { return static_cast<int>(offset_.size()) - 1; }

 private:
  std::vector<int> offset_;
  std::vector<Arc> arcs_;
};

/// Sorted ids of the edges of G[H].
std::vector<EdgeId> habitat_edges(const Adjacency& adjacency, std::span<const VertexId> habitat);

/// diam(G[F][H]) for the edge set F given as a membership mask over edge ids;
/// kUnreachable if some pair of H is disconnected.
int habitat_diameter(const Instance& instance, const std::vector<char>& edge_mask,
                     std::span<const VertexId> habitat);

/// Same, for an edge set given as a list of edge ids.
int habitat_diameter(const Instance& instance, std::span<const EdgeId> edge_set,
                     std::span<const VertexId> habitat);

Cost cost_of(const Instance& instance, std::span<const EdgeId> edges);

/// A minimum-cost edge set as produced by the solvers.
struct Optimum {
  std::vector<EdgeId> edges;
  Cost cost = 0;

  friend bool operator==(const Optimum&, const Optimum&) = default;
};

/// Feasibility verdict for a candidate edge set.
struct Solution {
  std::vector<EdgeId> edges;
  Cost cost = 0;
  bool feasible = false;
  std::vector<HabitatId> violated_habitats;
  std::vector<EdgeId> missing_forced;
  bool over_budget = false;
};

Solution is_solution(const Instance& instance, std::span<const EdgeId> edges);

InstanceStats stats(const Instance& instance);

/// Total order used for deterministic tie-breaking among optimal edge sets:
/// lower cost first, then fewer edges, then the lexicographically smaller
/// sorted id list. Both inputs must be sorted.
bool preferred(const Instance& instance, std::span<const EdgeId> a, std::span<const EdgeId> b);

/// Instance restricted to kept vertices, edges and habitats, with monotone
/// relabeling and maps from new ids back to the source ids.
struct Projection {
  Instance instance;
  std::vector<VertexId> vertex_origin;
  std::vector<EdgeId> edge_origin;
  std::vector<HabitatId> habitat_origin;
};

Projection project(const Instance& instance, const std::vector<char>& keep_vertex,
                   const std::vector<char>& keep_edge, const std::vector<char>& keep_habitat);

}  // namespace gbp
