#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbp/generators.hpp"

namespace gbp {

struct Mismatch {
  std::uint64_t seed = 0;
  std::optional<Cost> expected;  // oracle
  std::optional<Cost> actual;    // specialized solver, or the gadget identity
  std::string instance_json;
};

struct CrossReport {
  Regime regime = Regime::kDeg3;
  int trials = 0;
  int compared = 0;
  int inapplicable = 0;
  std::vector<Mismatch> mismatches;
};

/// Runs `trials` seeded instances (seeds base.seed, base.seed + 1, ...) of the
/// regime through the matching specialized solver and the exact oracle. For
/// the gadget regime, the generated optimum is compared against the offset
/// plus a minimum vertex cover of the source graph.
CrossReport cross_validate(const GeneratorConfig& base, int trials);

nlohmann::json report_to_json(const CrossReport& report);

}  // namespace gbp
