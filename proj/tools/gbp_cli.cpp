// Command-line front end. Exit codes: 0 ok, 1 infeasible or no-instance,
// 2 input error, 3 algorithm inapplicable, 4 cross-validation mismatch.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gbp/cross_validate.hpp"
#include "gbp/dispatch.hpp"
#include "gbp/dot.hpp"
#include "gbp/generators.hpp"
#include "gbp/hardness.hpp"
#include "gbp/intersect4.hpp"
#include "gbp/json_io.hpp"
#include "gbp/planar3.hpp"
#include "gbp/preprocess.hpp"
#include "gbp/zones3.hpp"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kInputError = 2, kInapplicable = 3, kMismatch = 4 };

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
  std::string algo = "auto";
  bool json = false;
  bool timing = false;
  // generate
  std::string regime = "deg3";
  int n = 12;
  int r = 6;
  gbp::Cost cost_min = 0;
  gbp::Cost cost_max = 5;
  int construction = 0;
  std::string vc;
  std::string map_out;
  // preprocess
  std::string ledger_out;
  // verify / export-dot
  std::string solution;
  // cross-validate
  int trials = 100;
  std::string repro_dir;
};

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw gbp::InputError(gbp::ErrorCode::kParse, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw gbp::InputError(gbp::ErrorCode::kParse, "cannot write '" + path + "'");
  out << text;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw gbp::InputError(gbp::ErrorCode::kParse, ex.what());
  }
}

gbp::Instance load_instance(const Options& o) { return gbp::parse_instance(read_text(o.input)); }

int cmd_solve(const Options& o) {
  const gbp::Instance inst = load_instance(o);
  const gbp::RunReport report = gbp::dispatch(inst, gbp::algo_from_string(o.algo));
  if (!o.output.empty())
    write_text(o.output, gbp::solution_to_json(inst, report.edges, report.feasible).dump(1) + "\n");
  if (o.json) {
    std::cout << gbp::report_to_json(inst, report, o.timing).dump(2) << "\n";
  } else {
    std::cout << "algorithm: " << gbp::to_string(report.algorithm) << "\n";
    std::cout << "feasible: " << (report.feasible ? "yes" : "no") << "\n";
    if (report.cost) std::cout << "cost: " << *report.cost << "\n";
    if (report.within_budget) std::cout << "within budget: " << (*report.within_budget ? "yes" : "no") << "\n";
    if (report.feasible) {
      std::cout << "edges:";
      for (gbp::EdgeId e : report.edges) std::cout << " {" << inst.edges[e].u << "," << inst.edges[e].v << "}";
      std::cout << "\n";
    }
    if (o.timing) std::cout << "wall ms: " << report.wall_ms << "\n";
  }
  if (!report.feasible) return kInfeasible;
  if (report.within_budget && !*report.within_budget) return kInfeasible;
  return kOk;
}

int cmd_preprocess(const Options& o) {
  const gbp::Instance inst = load_instance(o);
  const gbp::Preprocessed pre = gbp::preprocess_all(inst);
  if (!o.ledger_out.empty()) write_text(o.ledger_out, gbp::ledger_to_json(pre.ledger).dump(1) + "\n");
  if (pre.ledger.verdict == gbp::Verdict::kNoInstance) {
    std::cerr << "no-instance: habitat " << pre.ledger.violating_habitat.value_or(-1)
              << " has diameter above two in G\n";
    return kInfeasible;
  }
  write_text(o.output, gbp::serialize_instance(pre.instance));
  if (o.json)
    std::cerr << json{{"vertices", pre.instance.vertex_count},
                      {"edges", pre.instance.edges.size()},
                      {"habitats", pre.instance.habitats.size()},
                      {"newly_forced", pre.ledger.newly_forced.size()},
                      {"budget_delta", pre.ledger.budget_delta}}
                     .dump(2)
              << "\n";
  return kOk;
}

json analyze(const gbp::Instance& inst) {
  const gbp::InstanceStats s = gbp::stats(inst);
  json j;
  j["stats"] = {{"vertices", s.vertex_count},         {"edges", s.edge_count},
                {"habitats", s.habitat_count},         {"max_degree", s.max_degree},
                {"max_habitat_size", s.max_habitat_size}, {"embedded", s.is_planar_embedded}};
  j["suggested_algorithm"] = gbp::to_string(gbp::choose_algorithm(inst));
  const gbp::Preprocessed pre = gbp::preprocess_all(inst);
  j["preprocessing"] = {{"verdict", pre.ledger.verdict == gbp::Verdict::kContinue ? "continue" : "no-instance"},
                        {"vertices", pre.instance.vertex_count},
                        {"edges", pre.instance.edges.size()},
                        {"habitats", pre.instance.habitats.size()},
                        {"newly_forced", pre.ledger.newly_forced.size()},
                        {"components_removed", pre.ledger.removed_components.size()}};
  if (pre.ledger.verdict == gbp::Verdict::kNoInstance) return j;
  const gbp::Instance& red = pre.instance;
  if (s.max_degree <= 3) {
    try {
      json zones = json::array();
      for (const gbp::Zone& z : gbp::find_zones(red))
        zones.push_back({{"kind", gbp::to_string(z.kind)}, {"vertices", z.vertices}, {"edges", z.edges}});
      j["zones"] = zones;
    } catch (const gbp::Inapplicable& ex) {
      j["zones"] = ex.what();
    }
  }
  if (s.max_degree <= 4 && s.max_habitat_size <= 4) {
    const gbp::GenInstance gen = gbp::apply_rule9(gbp::to_gen(red));
    const gbp::IntersectionGraph g = gbp::build_intersection_graph(gen);
    const gbp::Deg4Audit a = gbp::audit(gen, g);
    json comps = json::array();
    for (const auto& c : g.components) comps.push_back({{"kind", gbp::to_string(c.kind)}, {"habitats", c.order}});
    j["intersection"] = {{"neighbors", g.neighbors},
                         {"components", comps},
                         {"max_habitats_per_edge", g.max_habitats_per_edge},
                         {"docking_violations", a.docking_violations},
                         {"endpoint_violations", a.endpoint_violations},
                         {"separation_violations", a.separation_violations},
                         {"oversized_components", a.oversized_components}};
  }
  if (s.is_planar_embedded && s.max_habitat_size <= 3) {
    try {
      json nest = json::array();
      for (const gbp::HabitatGeometry& g : gbp::classify_all(red))
        nest.push_back({{"habitat", g.habitat},
                        {"inside_vertices", g.inside_vertices.size()},
                        {"inside_habitats", g.inside_habitats}});
      j["nesting"] = nest;
    } catch (const gbp::Inapplicable& ex) {
      j["nesting"] = ex.what();
    }
  }
  return j;
}

int cmd_analyze(const Options& o) {
  const json j = analyze(load_instance(o));
  write_text(o.output, j.dump(2) + "\n");
  return kOk;
}

int cmd_generate(const Options& o) {
  if (o.construction != 0) {
    if (o.construction != 1 && o.construction != 2)
      throw gbp::InputError(gbp::ErrorCode::kParse, "construction must be 1 or 2");
    const gbp::VcInstance vc = gbp::vc_from_json(parse_json(read_text(o.vc)));
    const gbp::Reduction red = o.construction == 1 ? gbp::construct1(vc) : gbp::construct2(vc);
    gbp::Instance inst = red.instance;
    if (vc.k) inst.budget = red.map.target_offset + *vc.k;
    write_text(o.output, gbp::serialize_instance(inst));
    if (!o.map_out.empty()) write_text(o.map_out, gbp::gadget_map_to_json(red.map).dump(1) + "\n");
    return kOk;
  }
  gbp::GeneratorConfig cfg;
  cfg.regime = gbp::regime_from_string(o.regime);
  cfg.n = o.n;
  cfg.r = o.r;
  cfg.seed = o.seed;
  cfg.cost_min = o.cost_min;
  cfg.cost_max = o.cost_max;
  write_text(o.output, gbp::serialize_instance(gbp::generate(cfg)));
  return kOk;
}

int cmd_export_dot(const Options& o) {
  const gbp::Instance inst = load_instance(o);
  std::string text;
  if (!o.solution.empty()) {
    const auto edges = gbp::edges_from_json(inst, parse_json(read_text(o.solution)));
    text = gbp::export_dot(inst, std::span<const gbp::EdgeId>(edges));
  } else {
    text = gbp::export_dot(inst);
  }
  write_text(o.output, text);
  return kOk;
}

int cmd_verify(const Options& o) {
  const gbp::Instance inst = load_instance(o);
  if (o.solution.empty()) throw gbp::InputError(gbp::ErrorCode::kParse, "verify needs --solution");
  const auto edges = gbp::edges_from_json(inst, parse_json(read_text(o.solution)));
  const gbp::Solution s = gbp::is_solution(inst, edges);
  if (o.json) {
    std::cout << json{{"feasible", s.feasible},
                      {"cost", s.cost},
                      {"violated_habitats", s.violated_habitats},
                      {"missing_forced", s.missing_forced},
                      {"over_budget", s.over_budget}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (s.feasible ? "valid" : "invalid") << " (cost " << s.cost << ")\n";
    for (gbp::HabitatId h : s.violated_habitats) std::cout << "habitat " << h << " has diameter above two\n";
    for (gbp::EdgeId e : s.missing_forced)
      std::cout << "forced edge {" << inst.edges[e].u << "," << inst.edges[e].v << "} missing\n";
    if (s.over_budget) std::cout << "cost exceeds the budget\n";
  }
  return s.feasible ? kOk : kInfeasible;
}

int cmd_cross_validate(const Options& o) {
  gbp::GeneratorConfig cfg;
  cfg.regime = gbp::regime_from_string(o.regime);
  cfg.n = o.n;
  cfg.r = o.r;
  cfg.seed = o.seed;
  cfg.cost_min = o.cost_min;
  cfg.cost_max = o.cost_max;
  if (cfg.regime != gbp::Regime::kGadget && cfg.n > 14)
    throw gbp::InputError(gbp::ErrorCode::kParse, "cross-validation keeps n at most 14");
  const gbp::CrossReport report = gbp::cross_validate(cfg, o.trials);
  if (!o.repro_dir.empty())
    for (const gbp::Mismatch& m : report.mismatches)
      write_text((std::filesystem::path(o.repro_dir) / ("mismatch_" + std::to_string(m.seed) + ".json")).string(),
                 m.instance_json);
  if (o.json) {
    std::cout << gbp::report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << gbp::to_string(report.regime) << ": " << report.compared << " compared, " << report.inapplicable
              << " inapplicable, " << report.mismatches.size() << " mismatches\n";
    for (const gbp::Mismatch& m : report.mismatches)
      std::cout << "  seed " << m.seed << ": oracle " << (m.expected ? std::to_string(*m.expected) : "infeasible")
                << ", solver " << (m.actual ? std::to_string(*m.actual) : "infeasible") << "\n";
  }
  return report.mismatches.empty() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green bridges placement with diameter-two habitats"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", o.input, "Instance file (default: stdin)");
    sub->add_option("--output,-o", o.output, "Output file (default: stdout)");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--algo", o.algo, "auto | exact | deg3 | deg4 | planar3");
    sub->add_flag("--json", o.json, "Machine-readable report");
  };
  auto* solve = app.add_subcommand("solve", "Compute a minimum-cost solution");
  common(solve);
  solve->add_flag("--timing", o.timing, "Report wall time");
  auto* pre = app.add_subcommand("preprocess", "Apply the reduction rules");
  common(pre);
  pre->add_option("--ledger", o.ledger_out, "Write the reduction ledger here");
  auto* an = app.add_subcommand("analyze", "Structural report");
  common(an);
  auto* gen = app.add_subcommand("generate", "Random or reduction instance");
  common(gen);
  gen->add_option("--regime", o.regime, "deg3 | deg4h4 | planar-h3 | gadget");
  gen->add_option("--n", o.n, "Vertex count");
  gen->add_option("--r", o.r, "Habitat count");
  gen->add_option("--cost-min", o.cost_min);
  gen->add_option("--cost-max", o.cost_max);
  gen->add_option("--construction", o.construction, "1 or 2: build from a cubic planar graph");
  gen->add_option("--vc", o.vc, "Vertex-cover input for --construction");
  gen->add_option("--map", o.map_out, "Write the gadget label map here");
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  common(dot);
  dot->add_option("--solution", o.solution, "Solution file to highlight");
  auto* ver = app.add_subcommand("verify", "Check a solution file");
  common(ver);
  ver->add_option("--solution", o.solution, "Solution file")->required();
  auto* cv = app.add_subcommand("cross-validate", "Compare a specialized solver with the exact oracle");
  common(cv);
  cv->add_option("--regime", o.regime, "deg3 | deg4h4 | planar-h3 | gadget");
  cv->add_option("--trials", o.trials);
  cv->add_option("--n", o.n);
  cv->add_option("--r", o.r);
  cv->add_option("--cost-min", o.cost_min);
  cv->add_option("--cost-max", o.cost_max);
  cv->add_option("--repro-dir", o.repro_dir, "Directory for mismatching instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    if (*solve) return cmd_solve(o);
    if (*pre) return cmd_preprocess(o);
    if (*an) return cmd_analyze(o);
    if (*gen) return cmd_generate(o);
    if (*dot) return cmd_export_dot(o);
    if (*ver) return cmd_verify(o);
    if (*cv) return cmd_cross_validate(o);
  } catch (const gbp::InputError& e) {
    std::cerr << "input error (" << gbp::to_string(e.code()) << "): " << e.what() << "\n";
    return kInputError;
  } catch (const gbp::Inapplicable& e) {
    std::cerr << "inapplicable: " << e.what() << "\n";
    return kInapplicable;
  }
  return kInputError;
}
