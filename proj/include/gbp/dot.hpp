#pragma once

#include <optional>
#include <span>
#include <string>

#include "gbp/model.hpp"

namespace gbp {

/// Graphviz text for an instance: one colored subgraph per habitat, forced
/// edges dashed red, solution edges bold. Embedded instances pin positions.
std::string export_dot(const Instance& instance, std::optional<std::span<const EdgeId>> solution = std::nullopt);

}  // namespace gbp
