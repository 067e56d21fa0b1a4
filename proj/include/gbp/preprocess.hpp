#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gbp/model.hpp"

namespace gbp {

enum class Verdict { kContinue, kNoInstance };

/// A component deleted by the small-component rule, in original ids.
struct RemovedComponent {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> chosen;
  Cost cost = 0;
};

/// Everything needed to reconstruct the reduced instance from the original
/// one and to lift reduced solutions back. All ids refer to the original
/// instance unless stated otherwise.
struct ReductionLedger {
  Cost budget_delta = 0;
  std::vector<RemovedComponent> removed_components;
  std::vector<HabitatId> removed_habitats;
  std::vector<EdgeId> newly_forced;
  /// Edges in every solution that left the instance: forced edges dropped as
  /// irrelevant plus the local optima of removed components.
  std::vector<EdgeId> fixed_edges;
  /// Reduced id -> original id.
  std::vector<VertexId> vertex_origin;
  std::vector<EdgeId> edge_origin;
  std::vector<HabitatId> habitat_origin;
  Verdict verdict = Verdict::kContinue;
  std::optional<HabitatId> violating_habitat;
};

struct Preprocessed {
  Instance instance;
  ReductionLedger ledger;
};

/// Id of the first habitat whose induced subgraph has diameter above two.
std::optional<HabitatId> rule1_diameter_guard(const Instance& instance);

/// Forces every habitat edge outside all triangles of its habitat, and every
/// habitat edge at a cut vertex of the induced habitat graph.
Instance rule2_force_non_triangle_edges(const Instance& instance);

/// Forces every edge e of G[H] for which G[E(G[H]) \ {e}][H] has diameter
/// above two; such an edge belongs to every solution.
Instance force_necessary_edges(const Instance& instance);

/// Deletes satisfied habitats, edges outside every habitat, and isolated
/// vertices until nothing changes.
Preprocessed rule4_to_6_cleanup(const Instance& instance);

/// Solves and deletes every connected component with at most six vertices.
Preprocessed rule7_small_components(const Instance& instance);

/// Exhaustive reduction to a fixpoint. On kNoInstance the instance is returned
/// unchanged and the ledger names the violating habitat.
Preprocessed preprocess_all(const Instance& instance, bool small_components = true);

/// Rebuilds the reduced instance from the original and a ledger.
Instance replay(const Instance& original, const ReductionLedger& ledger);

/// Maps a solution of the reduced instance to a solution of the original.
std::vector<EdgeId> lift(const ReductionLedger& ledger, std::span<const EdgeId> reduced_edges);

}  // namespace gbp
