// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gbp/dispatch.hpp"
#include "gbp/exact.hpp"
#include "gbp/generators.hpp"
#include "gbp/hardness.hpp"
#include "gbp/intersect4.hpp"
#include "gbp/json_io.hpp"
#include "gbp/planar3.hpp"
#include "gbp/preprocess.hpp"
#include "gbp/zones3.hpp"
#include "hardness_checks.hpp"
#include "oracles.hpp"

using namespace gbp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::optional<Cost> cost_of_opt(const std::optional<Optimum>& o) { return o ? std::optional<Cost>(o->cost) : std::nullopt; }

GeneratorConfig config(Regime regime, int n, int r, std::uint64_t seed) {
  GeneratorConfig c;
  c.regime = regime;
  c.n = n;
  c.r = r;
  c.seed = seed;
  return c;
}

Outcome oracle_equivalence(Regime regime, int n, int r, int trials,
                           const std::function<std::optional<Optimum>(const Instance&)>& solver) {
  int mismatches = 0, feasible = 0;
  std::ostringstream first;
  for (int s = 1; s <= trials; ++s) {
    const Instance inst = generate(config(regime, n, r, std::uint64_t(s)));
    const auto expect = solve_exact(inst);
    const auto got = solver(inst);
    const bool same = cost_of_opt(expect) == cost_of_opt(got) && (!got || oracle::feasible(inst, got->edges));
    if (!same && mismatches++ == 0) first << " first mismatch at seed " << s;
    feasible += expect.has_value();
  }
  std::ostringstream d;
  d << trials << " instances (n=" << n << "), " << feasible << " feasible, " << mismatches << " mismatches"
    << first.str();
  return {mismatches == 0, d.str()};
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  Outcome o = oracle_equivalence(Regime::kDeg3, 14, 8, 500, solve_deg3);
  const double secs = seconds_since(t0);
  // The small-component rule settles every degree-three instance, so the zone
  // stage is also exercised with that rule switched off.
  int variant_mismatch = 0, variant_run = 0;
  for (int s = 1; s <= 500; ++s) {
    const Instance inst = generate(config(Regime::kDeg3, 14, 8, std::uint64_t(s)));
    try {
      const auto got = solve_deg3_traced(inst, false).optimum;
      ++variant_run;
      variant_mismatch += cost_of_opt(got) != cost_of_opt(solve_exact(inst));
    } catch (const Inapplicable&) {
    }
  }
  std::ostringstream d;
  d << o.detail << "; zone-stage variant " << variant_run << " run, " << variant_mismatch << " mismatches; " << secs
    << " s";
  return {o.pass && variant_mismatch == 0 && secs <= 60.0, d.str()};
}

Cost union_cost(const std::vector<EdgeId>& edges, const std::vector<Cost>& cost) {
  std::set<EdgeId> u(edges.begin(), edges.end());
  Cost c = 0;
  for (EdgeId e : u) c += cost[e];
  return c;
}

Outcome criterion2() {
  Outcome o = oracle_equivalence(Regime::kDeg4, 14, 10, 500, solve_deg4);
  int dp_checked = 0, dp_mismatch = 0, window_skipped = 0;
  for (int s = 1; s <= 500; ++s) {
    const Instance inst = generate(config(Regime::kDeg4, 14, 10, std::uint64_t(s)));
    for (bool small : {true, false}) {
      const Deg4Result res = solve_deg4_traced(inst, small);
      const Instance& red = res.gen.instance;
      std::vector<Cost> cost(red.edges.size());
      for (std::size_t e = 0; e < cost.size(); ++e) cost[e] = red.edges[e].forced ? 0 : red.edges[e].cost;
      for (const auto& comp : res.graph.components) {
        if (comp.kind != ComponentKind::kPath || comp.order.size() > 6) continue;
        std::vector<std::vector<std::vector<EdgeId>>> fams;
        for (HabitatId h : comp.order) fams.push_back(res.gen.families[h].sets);
        // The window condition is the dynamic program's precondition.
        bool window = true;
        for (std::size_t i = 0; i + 3 < comp.order.size(); ++i)
          for (EdgeId e : res.gen.families[comp.order[i]].habitat_edges) {
            const auto& far = res.gen.families[comp.order[i + 3]].habitat_edges;
            if (cost[e] > 0 && std::count(far.begin(), far.end(), e)) window = false;
          }
        if (!window) {
          ++window_skipped;
          continue;
        }
        ++dp_checked;
        dp_mismatch += union_cost(solve_path_dp(fams, cost), cost) != oracle::product_min(fams, cost);
      }
    }
  }
  std::ostringstream d;
  d << o.detail << "; path DP vs product on " << dp_checked << " components (" << window_skipped
    << " outside the window condition), " << dp_mismatch << " mismatches";
  return {o.pass && dp_mismatch == 0 && dp_checked > 0, d.str()};
}

std::vector<Rule8Step> g_steps;

Outcome criterion3() {
  Outcome o = oracle_equivalence(Regime::kPlanarH3, 13, 10, 300, [](const Instance& inst) {
    Planar3Result res = solve_planar3_traced(inst);
    for (auto& s : res.steps) g_steps.push_back(std::move(s));
    return res.optimum;
  });
  return o;
}

Outcome criterion4() {
  int checked = 0, bad = 0, brute = 0;
  for (const Rule8Step& step : g_steps) {
    const auto before = solve_exact(step.before), after = solve_exact(step.after);
    ++checked;
    if (!before || !after || before->cost != after->cost - step.delta) {
      ++bad;
      continue;
    }
    // Independent check by enumeration where the free edge count allows it.
    int free_before = 0, free_after = 0;
    for (const auto& e : step.before.edges) free_before += !e.forced;
    for (const auto& e : step.after.edges) free_after += !e.forced;
    if (step.before.vertex_count <= 12 && free_before <= 18 && free_after <= 18) {
      ++brute;
      bad += *oracle::brute_force_opt(step.before, 18) != *oracle::brute_force_opt(step.after, 18) - step.delta;
    }
  }
  std::ostringstream d;
  d << checked << " steps, " << brute << " also by enumeration, " << bad << " violations";
  return {checked > 0 && bad == 0, d.str()};
}

Outcome criterion5() {
  enum : VertexId { kLeft, kRight, kBottom, kTop, kCenter };
  const Instance inst = nested_triangles_example();
  const auto geo = classify_all(inst);
  const auto red = find_reducible(geo);
  if (!red) return {false, "no reducible habitat"};
  const InsideOptima o = inside_optima(inst, geo[*red]);
  auto omit = [&](VertexId a, VertexId b) {
    const EdgeId id = *find_edge(inst, a, b);
    for (int i = 0; i < 3; ++i)
      if (o.boundary[i] == id) return o.omit_opt[i];
    return Cost{-1};
  };
  const Rule8Step step = apply_rule8(inst, geo[*red], o);
  const Edge& rb = step.after.edges[*find_edge(step.after, kRight, kBottom)];
  std::ostringstream d;
  d << "opt=" << o.opt << " omit(l,b)=" << omit(kLeft, kBottom) << " omit(l,r)=" << omit(kLeft, kRight)
    << " omit(r,b)=" << omit(kRight, kBottom) << " delta=" << step.delta << " {r,b} forced=" << rb.forced;
  const bool pass = o.opt == 3 && omit(kLeft, kBottom) == 3 && omit(kLeft, kRight) == 7 &&
                    omit(kRight, kBottom) == 11 && rb.forced && rb.cost == 0 &&
                    solve_exact(inst)->cost == solve_exact(step.after)->cost - step.delta;
  return {pass, d.str()};
}

Outcome construction(Construction which) {
  std::ostringstream d;
  bool pass = true;
  double worst = 0;
  for (const VcInstance& vc : cubic_planar_fixtures()) {
    const int n = vc.vertex_count, m = int(vc.edges.size());
    const Reduction red = which == Construction::kOne ? construct1(vc) : construct2(vc);
    const int k = int(solve_vc_exact(vc).size());
    const bool k_ok = k == oracle::min_vertex_cover(n, vc.edges);
    const int offset = which == Construction::kOne ? 5 * n + 4 * m : 5 * n + 7 * m;
    const auto t0 = Clock::now();
    const auto opt = solve_exact(red.instance);
    const double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    bool audit = oracle::max_degree(red.instance) <= 5 && oracle::degree_formula_violations(red) == 0 &&
                 oracle::docking_log_ok(red);
    if (which == Construction::kOne) {
      audit = audit && oracle::max_habitat(red.instance) <= 3;
    } else {
      audit = audit && oracle::max_habitat(red.instance) <= 4 && red.instance.embedding.has_value();
      try {
        validate(red.instance);
      } catch (const InputError&) {
        audit = false;
      }
    }
    const bool ok = k_ok && opt && opt->cost == offset + k && audit && secs <= 600;
    d << " n=" << n << ":" << (opt ? opt->cost : -1) << "=" << offset << "+" << k << (ok ? "" : "(FAIL)");
    pass = pass && ok;
  }
  d << "; slowest solve " << worst << " s";
  return {pass, "min cost per fixture:" + d.str()};
}

Outcome criterion8() {
  int shape_checked = 0, shape_bad = 0;
  for (Regime regime : {Regime::kDeg3, Regime::kDeg4, Regime::kPlanarH3})
    for (int n : {14, 40})
      for (int s = 1; s <= 100; ++s) {
        const Preprocessed p = preprocess_all(generate(config(regime, n, n, std::uint64_t(s))));
        if (p.ledger.verdict != Verdict::kContinue) continue;
        ++shape_checked;
        shape_bad += !oracle::reduced_shape_violation(p.instance).empty();
      }

  int zone_runs = 0, zone_bad = 0;
  for (int s = 1; s <= 300; ++s) {
    try {
      const Deg3Result res = solve_deg3_traced(generate(config(Regime::kDeg3, 14, 8, std::uint64_t(s))), false);
      ++zone_runs;
      std::set<EdgeId> seen;
      for (const Zone& z : res.zones)
        for (EdgeId e : z.edges) zone_bad += !seen.insert(e).second;
    } catch (const Inapplicable&) {
    }
  }

  Deg4Audit total;
  int instances = 0, classified = 0, nontrivial = 0;
  const int sizes[] = {14, 40, 80};
  for (int s = 1; s <= 600; ++s) {
    const int n = sizes[s % 3];
    const Deg4Result res = solve_deg4_traced(generate(config(Regime::kDeg4, n, n, std::uint64_t(s))));
    ++instances;
    const Deg4Audit& a = res.audit;
    total.max_habitats_per_edge = std::max(total.max_habitats_per_edge, a.max_habitats_per_edge);
    total.edge_bound_violations += a.edge_bound_violations;
    total.docking_pairs_checked += a.docking_pairs_checked;
    total.docking_violations += a.docking_violations;
    total.paths_with_proper_docking += a.paths_with_proper_docking;
    total.endpoint_violations += a.endpoint_violations;
    total.separation_violations += a.separation_violations;
    total.oversized_components += a.oversized_components;
    total.paths += a.paths;
    total.cycles += a.cycles;
    total.constants += a.constants;
    classified += a.oversized_components == 0;
    nontrivial += !res.graph.components.empty();
  }
  std::ostringstream d;
  d << "reduced shape " << shape_bad << "/" << shape_checked << "; zone overlaps " << zone_bad << " in " << zone_runs
    << " runs; max habitats per edge " << total.max_habitats_per_edge << "; docking " << total.docking_violations
    << "/" << total.docking_pairs_checked << "; endpoints " << total.endpoint_violations << "/"
    << total.paths_with_proper_docking << "; classified "
    << classified << "/" << instances << " (" << nontrivial << " non-empty; " << total.paths << " paths, "
    << total.cycles << " cycles, " << total.constants << " constant); informational: "
    << total.separation_violations << " unforced edges shared across components (solved merged)";
  const bool pass = shape_bad == 0 && zone_bad == 0 && zone_runs > 0 && total.edge_bound_violations == 0 &&
                    total.max_habitats_per_edge <= 21 && total.docking_violations == 0 &&
                    total.endpoint_violations == 0 && classified == instances &&
                    instances >= 500;
  return {pass, d.str()};
}

std::string full_run(Regime regime, std::uint64_t seed) {
  const Instance inst = generate(config(regime, 30, 20, seed));
  const RunReport report = dispatch(inst, Algo::kAuto);
  return serialize_instance(inst) + report_to_json(inst, report, false).dump() +
         solution_to_json(inst, report.edges, report.feasible).dump();
}

Outcome criterion9() {
  int compared = 0, differing = 0;
  for (Regime regime : {Regime::kDeg3, Regime::kDeg4, Regime::kPlanarH3, Regime::kGadget})
    for (std::uint64_t seed = 1; seed <= (regime == Regime::kGadget ? 2u : 20u); ++seed) {
      ++compared;
      differing += full_run(regime, seed) != full_run(regime, seed);
    }
  std::ostringstream d;
  d << compared << " seeded runs repeated, " << differing << " differ";
  return {differing == 0, d.str()};
}

Outcome criterion10() {
  std::ostringstream d;
  bool pass = true;
  for (Regime regime : {Regime::kDeg3, Regime::kDeg4}) {
    const auto t0 = Clock::now();
    const Instance inst = generate(config(regime, 100000, 100000, 7));
    const double gen = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto opt = regime == Regime::kDeg3 ? solve_deg3(inst) : solve_deg4(inst);
    const double solve = seconds_since(t1);
    const bool ok = opt.has_value() && solve <= 10.0 && int(inst.habitats.size()) > 50000;
    pass = pass && ok;
    d << to_string(regime) << ": r=" << inst.habitats.size() << " generate " << gen << " s, solve " << solve << " s; ";
  }
  return {pass, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"degree-3 solver equals exact", criterion1},
      {"degree-4 solver equals exact, path DP equals product", criterion2},
      {"planar solver equals exact", criterion3},
      {"cost propagation preserves the optimum", criterion4},
      {"nested triangle worked values", criterion5},
      {"first reduction soundness and audit", [] { return construction(Construction::kOne); }},
      {"second reduction soundness, planarity and audit", [] { return construction(Construction::kTwo); }},
      {"invariant suites", criterion8},
      {"determinism", criterion9},
      {"large-instance smoke", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s -- %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
