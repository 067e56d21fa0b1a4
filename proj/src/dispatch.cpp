#include "gbp/dispatch.hpp"

#include <chrono>

#include "gbp/exact.hpp"
#include "gbp/json_io.hpp"
#include "gbp/intersect4.hpp"
#include "gbp/planar3.hpp"
#include "gbp/preprocess.hpp"
#include "gbp/zones3.hpp"

namespace gbp {

const char* to_string(Algo algo) {
  switch (algo) {
    case Algo::kAuto: return "auto";
    case Algo::kExact: return "exact";
    case Algo::kDeg3: return "deg3";
    case Algo::kDeg4: return "deg4";
    case Algo::kPlanar3: return "planar3";
  }
  return "?";
}

Algo algo_from_string(const std::string& name) {
  for (Algo a : {Algo::kAuto, Algo::kExact, Algo::kDeg3, Algo::kDeg4, Algo::kPlanar3})
    if (name == to_string(a)) return a;
  throw InputError(ErrorCode::kParse, "unknown algorithm '" + name + "'");
}

namespace {

bool applicable(const InstanceStats& s, Algo algo) {
  switch (algo) {
    case Algo::kDeg3: return s.max_degree <= 3;
    case Algo::kDeg4: return s.max_degree <= 4 && s.max_habitat_size <= 4;
    case Algo::kPlanar3: return s.is_planar_embedded && s.max_habitat_size <= 3;
    default: return true;
  }
}

std::optional<Optimum> run(const Instance& instance, Algo algo) {
  switch (algo) {
    case Algo::kDeg3: return solve_deg3(instance);
    case Algo::kDeg4: return solve_deg4(instance);
    case Algo::kPlanar3: return solve_planar3(instance);
    default: return solve_exact(instance);
  }
}

}  // namespace

Algo choose_algorithm(const Instance& instance) {
  const InstanceStats s = stats(instance);
  for (Algo a : {Algo::kDeg3, Algo::kDeg4, Algo::kPlanar3})
    if (applicable(s, a)) return a;
  return Algo::kExact;
}

RunReport dispatch(const Instance& instance, Algo algo) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.stats = stats(instance);
  std::optional<Optimum> result;
  if (algo == Algo::kAuto) {
    bool done = false;
    for (Algo a : {Algo::kDeg3, Algo::kDeg4, Algo::kPlanar3}) {
      if (!applicable(report.stats, a)) continue;
      try {
        result = run(instance, a);
        report.algorithm = a;
        done = true;
        break;
      } catch (const Inapplicable&) {
      }
    }
    if (!done) {
      result = solve_exact(instance);
      report.algorithm = Algo::kExact;
    }
  } else {
    if (!applicable(report.stats, algo))
      throw Inapplicable(std::string(to_string(algo)) + " does not apply to this instance");
    result = run(instance, algo);
    report.algorithm = algo;
  }
  const Preprocessed pre = preprocess_all(instance);
  report.forced_by_preprocessing = static_cast<int>(pre.ledger.newly_forced.size());
  report.habitats_removed = static_cast<int>(pre.ledger.removed_habitats.size());
  report.components_removed = static_cast<int>(pre.ledger.removed_components.size());
  if (result) {
    report.feasible = true;
    report.cost = result->cost;
    report.edges = result->edges;
    if (instance.budget) report.within_budget = result->cost <= *instance.budget;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json report_to_json(const Instance& instance, const RunReport& report, bool with_timing) {
  nlohmann::json j;
  j["algorithm"] = to_string(report.algorithm);
  j["feasible"] = report.feasible;
  if (report.cost) j["cost"] = *report.cost;
  if (report.within_budget) j["within_budget"] = *report.within_budget;
  if (report.feasible) j["solution"] = solution_to_json(instance, report.edges, true)["edges"];
  j["stats"] = {{"vertices", report.stats.vertex_count},
                {"edges", report.stats.edge_count},
                {"habitats", report.stats.habitat_count},
                {"max_degree", report.stats.max_degree},
                {"max_habitat_size", report.stats.max_habitat_size},
                {"embedded", report.stats.is_planar_embedded}};
  j["preprocessing"] = {{"newly_forced", report.forced_by_preprocessing},
                        {"habitats_removed", report.habitats_removed},
                        {"components_removed", report.components_removed}};
  if (with_timing) j["wall_ms"] = report.wall_ms;
  return j;
}

}  // namespace gbp
