#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gbp/model.hpp"

namespace gbp {

/// Search statistics of one solve_exact call.
struct ExactStats {
  std::int64_t nodes = 0;
  std::int64_t variables = 0;
  std::int64_t component_splits = 0;
};

/// Minimum-cost F with F* ⊆ F ⊆ E (or F* ∪ restrict_to) such that every
/// habitat has diameter at most two in G[F]. Ties are broken by edge count,
/// then by the lexicographically smallest sorted edge-id list. Returns
/// nullopt if no feasible set exists. The budget is not consulted.
std::optional<Optimum> solve_exact(const Instance& instance,
                                   const std::optional<std::vector<EdgeId>>& restrict_to = std::nullopt,
                                   ExactStats* stats = nullptr);

/// All feasible edge sets of one habitat (each contains the forced habitat
/// edges), listed in increasing order of the bitmask over the habitat's
/// unforced edges.
struct FeasibleFamily {
  HabitatId habitat = 0;
  std::vector<EdgeId> habitat_edges;
  std::vector<std::vector<EdgeId>> sets;
};

/// Raised when a habitat has more unforced edges than the enumeration guard.
class FamilyTooLarge : public Inapplicable {
 public:
  using Inapplicable::Inapplicable;
};

inline constexpr int kFamilyGuard = 12;

FeasibleFamily enumerate_feasible_sets(const Instance& instance, HabitatId habitat, int guard = kFamilyGuard);

/// Members of a family that contain no other member.
std::vector<std::vector<EdgeId>> minimal_members(const std::vector<std::vector<EdgeId>>& sets);

}  // namespace gbp
