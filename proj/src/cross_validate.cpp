#include "gbp/cross_validate.hpp"

#include "gbp/exact.hpp"
#include "gbp/hardness.hpp"
#include "gbp/intersect4.hpp"
#include "gbp/json_io.hpp"
#include "gbp/planar3.hpp"
#include "gbp/zones3.hpp"

namespace gbp {

namespace {

std::optional<Cost> cost_or_none(const std::optional<Optimum>& o) {
  if (!o) return std::nullopt;
  return o->cost;
}

// Optimum of the gadget instance against offset + minimum cover. Mirrors the
// fixture and construction choice of the gadget generator.
Mismatch gadget_trial(std::uint64_t seed, bool& agree) {
  const auto fixtures = cubic_planar_fixtures();
  const VcInstance& vc = fixtures[seed % fixtures.size()];
  const bool first = (seed / fixtures.size()) % 2 == 0;
  const Reduction red = first ? construct1(vc) : construct2(vc);
  Mismatch m;
  m.seed = seed;
  m.expected = cost_or_none(solve_exact(red.instance));
  m.actual = red.map.target_offset + static_cast<Cost>(solve_vc_exact(vc).size());
  agree = m.expected == m.actual;
  if (!agree) m.instance_json = serialize_instance(red.instance);
  return m;
}

}  // namespace

CrossReport cross_validate(const GeneratorConfig& base, int trials) {
  CrossReport report;
  report.regime = base.regime;
  report.trials = trials;
  for (int i = 0; i < trials; ++i) {
    GeneratorConfig cfg = base;
    cfg.seed = base.seed + static_cast<std::uint64_t>(i);
    bool agree = true;
    if (cfg.regime == Regime::kGadget) {
      Mismatch m = gadget_trial(cfg.seed, agree);
      ++report.compared;
      if (!agree) report.mismatches.push_back(std::move(m));
      continue;
    }
    const Instance inst = generate(cfg);
    std::optional<Cost> actual;
    try {
      switch (cfg.regime) {
        case Regime::kDeg3: actual = cost_or_none(solve_deg3(inst)); break;
        case Regime::kDeg4: actual = cost_or_none(solve_deg4(inst)); break;
        default: actual = cost_or_none(solve_planar3(inst)); break;
      }
    } catch (const Inapplicable&) {
      ++report.inapplicable;
      continue;
    }
    const std::optional<Cost> expected = cost_or_none(solve_exact(inst));
    ++report.compared;
    if (expected != actual) report.mismatches.push_back({cfg.seed, expected, actual, serialize_instance(inst)});
  }
  return report;
}

nlohmann::json report_to_json(const CrossReport& report) {
  nlohmann::json j;
  j["regime"] = to_string(report.regime);
  j["trials"] = report.trials;
  j["compared"] = report.compared;
  j["inapplicable"] = report.inapplicable;
  j["mismatches"] = nlohmann::json::array();
  for (const Mismatch& m : report.mismatches) {
    nlohmann::json x;
    x["seed"] = m.seed;
    x["expected"] = m.expected ? nlohmann::json(*m.expected) : nlohmann::json(nullptr);
    x["actual"] = m.actual ? nlohmann::json(*m.actual) : nlohmann::json(nullptr);
    x["instance"] = nlohmann::json::parse(m.instance_json);
    j["mismatches"].push_back(std::move(x));
  }
  return j;
}

}  // namespace gbp
