#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbp/model.hpp"

namespace gbp {

enum class Algo { kAuto, kExact, kDeg3, kDeg4, kPlanar3 };

const char* to_string(Algo algo);
/// Throws InputError for unknown names.
Algo algo_from_string(const std::string& name);

/// First specialized solver whose preconditions hold, in the order deg3,
/// deg4, planar3; exact otherwise.
Algo choose_algorithm(const Instance& instance);

struct RunReport {
  Algo algorithm = Algo::kExact;
  bool feasible = false;
  std::optional<Cost> cost;           // present iff feasible
  std::optional<bool> within_budget;  // present iff feasible and a budget is set
  std::vector<EdgeId> edges;
  InstanceStats stats;
  int forced_by_preprocessing = 0;
  int habitats_removed = 0;
  int components_removed = 0;
  double wall_ms = 0;
};

/// Runs the requested solver. A forced algorithm whose preconditions fail
/// raises Inapplicable; `auto` falls through to the next candidate instead.
RunReport dispatch(const Instance& instance, Algo algo);

/// Machine-readable report. Wall time is included only on request so that
/// repeated runs produce identical bytes.
nlohmann::json report_to_json(const Instance& instance, const RunReport& report, bool with_timing);

}  // namespace gbp
