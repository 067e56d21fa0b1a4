#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbp/exact.hpp"
#include "gbp/model.hpp"

namespace gbp {

/// Instance in generalized form: every habitat carries an explicit family of
/// feasible edge sets, and F is a solution iff for every active habitat some
/// family member is contained in F.
struct GenInstance {
  Instance instance;
  std::vector<FeasibleFamily> families;  // indexed by habitat id
  std::vector<char> active;              // habitats removed by nesting are inactive
};

/// Families of all habitats. Throws Inapplicable for habitats above size four.
GenInstance to_gen(const Instance& instance);

/// For every habitat H' whose vertex set lies in another habitat H, keeps
/// only those members of H's family that contain a member of H''s family,
/// then deactivates H'. Of two equal habitats the higher id is deactivated.
GenInstance apply_rule9(GenInstance gen);

enum class ComponentKind { kPath, kCycle, kConstant };
const char* to_string(ComponentKind kind);

struct HabitatComponent {
  ComponentKind kind = ComponentKind::kPath;
  /// Paths: from the endpoint with the smaller id. Cycles: from the smallest
  /// id towards its smaller neighbor. Other components: breadth-first order.
  std::vector<HabitatId> order;
};

struct IntersectionGraph {
  std::vector<std::vector<HabitatId>> neighbors;  // per habitat id, sorted
  std::vector<HabitatComponent> components;
  std::vector<int> component_of;  // -1 for inactive habitats
  int max_habitats_per_edge = 0;
};

inline constexpr int kComponentCap = 12;

/// Two active habitats are neighbors when their common vertices induce an
/// unforced edge and no third habitat meets either of them in a strictly
/// larger induced edge set.
IntersectionGraph build_intersection_graph(const GenInstance& gen);

/// Invariant audit of an intersection graph. Counts are violations unless
/// named otherwise.
struct Deg4Audit {
  int max_habitats_per_edge = 0;
  int edge_bound_violations = 0;        // edges in more than 21 habitats
  int docking_pairs_checked = 0;
  int docking_violations = 0;           // docking count outside [2, max size - 1]
  int paths_with_proper_docking = 0;
  int endpoint_violations = 0;          // endpoint habitat without a unique degree-2/3 witness
  int separation_violations = 0;        // unforced edges shared across components
  int window_violations = 0;            // paths whose habitats i, i+3 share an unforced edge
  int oversized_components = 0;         // non-path non-cycle components above the cap
  int paths = 0, cycles = 0, constants = 0;
};

Deg4Audit audit(const GenInstance& gen, const IntersectionGraph& graph, int cap = kComponentCap);

/// Minimum over one member per habitat of the cost of their union, computed
/// with the triple-window dynamic program. `cost` is indexed by edge id.
/// Requires that habitats three or more positions apart share no edge of
/// positive cost.
std::vector<EdgeId> solve_path_dp(const std::vector<std::vector<std::vector<EdgeId>>>& families,
                                  const std::vector<Cost>& cost);

/// Same objective by exhaustive search with pruning; used as the reference
/// for the dynamic program and for components without path structure.
std::vector<EdgeId> solve_product(const std::vector<std::vector<std::vector<EdgeId>>>& families,
                                  const std::vector<Cost>& cost);

struct Deg4Result {
  std::optional<Optimum> optimum;
  GenInstance gen;
  IntersectionGraph graph;
  Deg4Audit audit;
  int fallback_components = 0;  // components solved by exhaustive search
};

/// With small_components off, the small-component rule is skipped so that
/// every habitat reaches the intersection graph.
Deg4Result solve_deg4_traced(const Instance& instance, bool small_components = true);
std::optional<Optimum> solve_deg4(const Instance& instance);

}  // namespace gbp
