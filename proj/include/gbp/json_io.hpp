#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "gbp/model.hpp"

namespace gbp {

/// Parses the instance format, canonicalizes and validates it. Throws
/// InputError on malformed documents.
Instance instance_from_json(const nlohmann::json& doc);
Instance parse_instance(const std::string& text);

nlohmann::json instance_to_json(const Instance& instance);

/// Canonical text form; parsing and re-serializing yields identical bytes.
std::string serialize_instance(const Instance& instance);

/// {"edges": [[u, v], ...], "cost": c, "feasible": b}
nlohmann::json solution_to_json(const Instance& instance, std::span<const EdgeId> edges, bool feasible);

/// Reads the "edges" array of a solution document back into edge ids.
std::vector<EdgeId> edges_from_json(const Instance& instance, const nlohmann::json& doc);

}  // namespace gbp

#include "gbp/hardness.hpp"
#include "gbp/preprocess.hpp"

namespace gbp {

/// {"vertices": n, "edges": [[u, v], ...], "rotation"?: [[...], ...], "k"?: k}
VcInstance vc_from_json(const nlohmann::json& doc);
nlohmann::json vc_to_json(const VcInstance& vc);

/// Label tables of a generated reduction instance.
nlohmann::json gadget_map_to_json(const GadgetMap& map);

/// Sidecar describing how a reduced instance relates to its original.
nlohmann::json ledger_to_json(const ReductionLedger& ledger);

}  // namespace gbp
