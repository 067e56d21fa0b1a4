#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gbp/model.hpp"
#include "gbp/preprocess.hpp"

namespace gbp {

/// Position of everything else relative to one triangle habitat H of an
/// embedded instance.
struct HabitatGeometry {
  HabitatId habitat = 0;
  std::array<VertexId, 3> triangle{};
  std::vector<VertexId> inside_vertices;   // strictly inside the triangle
  std::vector<VertexId> outside_vertices;  // neither on nor inside it
  std::vector<EdgeId> inside_edges;        // edges outside E_H with an inside endpoint
  std::vector<EdgeId> outside_edges;
  std::array<EdgeId, 3> boundary_edges{};  // E_H in increasing id order
  std::vector<HabitatId> inside_habitats;  // other habitats in the closed triangle
  std::vector<HabitatId> outside_habitats;
};

/// Requires an embedding and that the habitat induces a triangle; throws
/// Inapplicable otherwise.
HabitatGeometry classify(const Instance& instance, HabitatId habitat);
std::vector<HabitatGeometry> classify_all(const Instance& instance);

/// Smallest habitat id with at least one inside habitat, all of whose inside
/// habitats have none; nullopt if no habitat has inside habitats.
std::optional<HabitatId> find_reducible(const std::vector<HabitatGeometry>& geometries);

/// Cheapest inner solutions for a reducible habitat. omit_* are indexed like
/// HabitatGeometry::boundary_edges; witnesses use ids of the instance.
struct InsideOptima {
  HabitatId habitat = 0;
  Cost opt = 0;
  std::vector<EdgeId> witness;
  std::array<EdgeId, 3> boundary{};
  std::array<Cost, 3> omit_opt{};
  std::array<std::vector<EdgeId>, 3> omit_witness;
};

InsideOptima inside_optima(const Instance& instance, const HabitatGeometry& geometry);

/// One cost-propagation step: the region inside H is cut out, its cost is
/// moved onto the boundary edges, and the budget shifts by delta.
struct Rule8Step {
  HabitatId habitat = 0;
  InsideOptima optima;
  Cost delta = 0;
  std::vector<EdgeId> negative_edges;  // boundary edges zeroed and forced, ids of `before`
  Instance before;
  Instance after;
  std::vector<EdgeId> edge_origin;  // after id -> before id
};

Rule8Step apply_rule8(const Instance& instance, const HabitatGeometry& geometry, const InsideOptima& optima);

/// Maps a solution of step.after to a solution of step.before.
std::vector<EdgeId> unwind_rule8(const Rule8Step& step, std::span<const EdgeId> after_solution);

struct Planar3Result {
  std::optional<Optimum> optimum;
  Preprocessed preprocessed;
  std::vector<Rule8Step> steps;
};

/// Minimum-cost solution for embedded instances whose habitats have at most
/// three vertices. Throws Inapplicable when the preconditions fail.
Planar3Result solve_planar3_traced(const Instance& instance);
std::optional<Optimum> solve_planar3(const Instance& instance);

}  // namespace gbp
