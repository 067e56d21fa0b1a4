#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gbp/cross_validate.hpp"
#include "gbp/dispatch.hpp"
#include "gbp/dot.hpp"
#include "gbp/exact.hpp"
#include "gbp/generators.hpp"
#include "gbp/json_io.hpp"
#include "oracles.hpp"

using namespace gbp;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::path(GBP_TEST_TMP) / "cli";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Runs the command-line tool with stdout sent to `out` and returns its exit status.
int run(const std::string& args, const fs::path& out = kWork / "stdout.txt") {
  fs::create_directories(kWork);
  const std::string cmd = std::string("\"") + GBP_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                          (kWork / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Instance unit_triangle() {
  return make_instance(3, {{0, 1, 1, false}, {0, 2, 1, false}, {1, 2, 1, false}}, {{0, 1, 2}});
}

}  // namespace

TEST_CASE("serialization round trip is byte identical") {
  for (Regime regime : {Regime::kDeg3, Regime::kDeg4, Regime::kPlanarH3, Regime::kGadget}) {
    GeneratorConfig c;
    c.regime = regime;
    c.seed = 3;
    const Instance inst = generate(c);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
  }
  Instance budgeted = nested_triangles_example();
  CHECK(parse_instance(serialize_instance(budgeted)) == budgeted);
}

TEST_CASE("malformed documents raise input errors") {
  CHECK_THROWS_AS(parse_instance("{"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"vertices": 2, "edges": []})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"vertices": 2, "edges": [{"u": 0, "v": 5}], "habitats": []})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"vertices": 2, "edges": [{"u": 0, "v": 1, "cost": -2}], "habitats": []})"),
                  InputError);
  const Instance ok = parse_instance(R"({"vertices": 3, "edges": [{"u": 2, "v": 0, "cost": 4}], "habitats": [[2, 0]]})");
  CHECK(ok.edges[0] == Edge{0, 2, 4, false});
}

TEST_CASE("solution documents round trip through edge ids") {
  const Instance inst = unit_triangle();
  const nlohmann::json doc = solution_to_json(inst, std::vector<EdgeId>{0, 2}, true);
  CHECK(doc["cost"] == 2);
  CHECK(edges_from_json(inst, doc) == std::vector<EdgeId>{0, 2});
}

TEST_CASE("seeded generators are reproducible and respect their regimes") {
  for (Regime regime : {Regime::kDeg3, Regime::kDeg4, Regime::kPlanarH3}) {
    GeneratorConfig c;
    c.regime = regime;
    c.n = 30;
    c.r = 20;
    for (c.seed = 1; c.seed <= 10; ++c.seed) {
      const Instance a = generate(c), b = generate(c);
      CHECK(a == b);
      const InstanceStats st = stats(a);
      if (regime == Regime::kDeg3) CHECK(st.max_degree <= 3);
      if (regime == Regime::kDeg4) CHECK((st.max_degree <= 4 && st.max_habitat_size <= 4));
      if (regime == Regime::kPlanarH3) CHECK((st.is_planar_embedded && st.max_habitat_size <= 3));
    }
  }
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = rng.between(-3, 3);
    CHECK((x >= -3 && x <= 3));
  }
  CHECK(regime_from_string("deg4") == Regime::kDeg4);
  CHECK_THROWS_AS(regime_from_string("nope"), InputError);
}

TEST_CASE("automatic dispatch picks an applicable solver and matches the oracle") {
  CHECK(choose_algorithm(unit_triangle()) == Algo::kDeg3);
  CHECK(choose_algorithm(nested_triangles_example()) == Algo::kDeg4);
  GeneratorConfig planar;
  planar.regime = Regime::kPlanarH3;
  planar.n = 12;
  planar.r = 8;
  for (planar.seed = 1; planar.seed <= 20; ++planar.seed) {
    const Instance inst = generate(planar);
    const RunReport report = dispatch(inst, Algo::kAuto);
    const auto expect = solve_exact(inst);
    CHECK(report.feasible == expect.has_value());
    if (expect) CHECK(*report.cost == expect->cost);
    CHECK_NOTHROW(dispatch(inst, Algo::kPlanar3));
  }
  std::vector<Edge> k5;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.push_back({u, v, 1, false});
  const Instance dense = make_instance(5, k5, {{0, 1, 2, 3, 4}});
  CHECK(choose_algorithm(dense) == Algo::kExact);
  CHECK_THROWS_AS(dispatch(dense, Algo::kDeg3), Inapplicable);
  CHECK_THROWS_AS(dispatch(dense, Algo::kPlanar3), Inapplicable);
  CHECK(dispatch(dense, Algo::kAuto).cost == *oracle::brute_force_opt(dense));
  CHECK_THROWS_AS(algo_from_string("fast"), InputError);
}

TEST_CASE("reports omit wall time unless asked") {
  const Instance inst = nested_triangles_example();
  const RunReport report = dispatch(inst, Algo::kExact);
  CHECK(report.within_budget == true);
  const auto plain = report_to_json(inst, report, false);
  CHECK_FALSE(plain.contains("wall_ms"));
  CHECK(report_to_json(inst, report, true).contains("wall_ms"));
  CHECK(plain["cost"] == 9);
}

TEST_CASE("DOT export marks habitats, forced and chosen edges") {
  Instance inst = nested_triangles_example();
  inst.edges[0].forced = true;
  const std::vector<EdgeId> sol{1};
  const std::string dot = export_dot(inst, std::span<const EdgeId>(sol));
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("subgraph habitat_3") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("penwidth=3") != std::string::npos);
  CHECK(dot.find("pos=\"4,6!\"") != std::string::npos);
}

TEST_CASE("cross validation reports zero mismatches on small runs") {
  GeneratorConfig c;
  c.n = 10;
  c.r = 6;
  for (Regime regime : {Regime::kDeg3, Regime::kDeg4, Regime::kPlanarH3}) {
    c.regime = regime;
    const CrossReport rep = cross_validate(c, 25);
    CHECK(rep.trials == 25);
    CHECK(rep.compared + rep.inapplicable == 25);
    CHECK(rep.mismatches.empty());
  }
  c.regime = Regime::kDeg3;
  const CrossReport none = cross_validate(c, 0);
  CHECK(none.compared == 0);
  CHECK(report_to_json(none)["mismatches"].empty());
}

TEST_CASE("command-line exit codes and outputs") {
  fs::create_directories(kWork);
  const fs::path tri = kWork / "tri.json", sol = kWork / "sol.json", bad = kWork / "bad.json";
  spit(tri, serialize_instance(unit_triangle()));
  spit(bad, "{\"vertices\": 1}");

  CHECK(run("solve -i \"" + tri.string() + "\" -o \"" + sol.string() + "\"") == 0);
  CHECK(run("verify -i \"" + tri.string() + "\" --solution \"" + sol.string() + "\"") == 0);
  CHECK(slurp(kWork / "stdout.txt").find("valid") == 0);
  spit(sol, R"({"edges": [[0, 1]]})");
  CHECK(run("verify -i \"" + tri.string() + "\" --solution \"" + sol.string() + "\"") == 1);

  CHECK(run("solve -i \"" + bad.string() + "\"") == 2);
  CHECK(run("solve -i \"" + (kWork / "missing.json").string() + "\"") == 2);
  CHECK(run("solve --bogus-flag") == 2);

  // A path habitat of diameter three is a no-instance.
  spit(kWork / "path.json", serialize_instance(make_instance(
                                4, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 3, 1, false}}, {{0, 1, 2, 3}})));
  CHECK(run("solve -i \"" + (kWork / "path.json").string() + "\"") == 1);
  CHECK(run("preprocess -i \"" + (kWork / "path.json").string() + "\"") == 1);

  // Over budget counts as infeasible.
  Instance tight = unit_triangle();
  tight.budget = 1;
  spit(kWork / "tight.json", serialize_instance(tight));
  CHECK(run("solve -i \"" + (kWork / "tight.json").string() + "\"") == 1);

  spit(kWork / "square.json", serialize_instance(make_instance(
                                  4, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 3, 1, false}, {0, 3, 1, false}},
                                  {{0, 1, 2, 3}})));
  CHECK(run("solve --algo planar3 -i \"" + (kWork / "square.json").string() + "\"") == 3);
  CHECK(run("solve --algo exact -i \"" + (kWork / "square.json").string() + "\"") == 0);

  CHECK(run("generate --regime deg3 --n 20 --r 10 --seed 4", kWork / "g1.json") == 0);
  CHECK(run("generate --regime deg3 --n 20 --r 10 --seed 4", kWork / "g2.json") == 0);
  CHECK(slurp(kWork / "g1.json") == slurp(kWork / "g2.json"));
  CHECK(run("solve --json -i \"" + (kWork / "g1.json").string() + "\"", kWork / "r1.json") == 0);
  CHECK(run("solve --json -i \"" + (kWork / "g1.json").string() + "\"", kWork / "r2.json") == 0);
  CHECK(slurp(kWork / "r1.json") == slurp(kWork / "r2.json"));

  CHECK(run("analyze -i \"" + (kWork / "g1.json").string() + "\"") == 0);
  CHECK(run("export-dot -i \"" + (kWork / "g1.json").string() + "\"", kWork / "g.dot") == 0);
  CHECK(slurp(kWork / "g.dot").find("graph") != std::string::npos);
  CHECK(run("preprocess -i \"" + (kWork / "g1.json").string() + "\" --ledger \"" + (kWork / "ledger.json").string() +
            "\"") == 0);
  CHECK(nlohmann::json::parse(slurp(kWork / "ledger.json")).contains("fixed_edges"));

  spit(kWork / "k4.json", vc_to_json(cubic_planar_fixtures().front()).dump());
  CHECK(run("generate --construction 2 --vc \"" + (kWork / "k4.json").string() + "\" --map \"" +
                (kWork / "map.json").string() + "\"",
            kWork / "c2.json") == 0);
  CHECK(parse_instance(slurp(kWork / "c2.json")).embedding.has_value());

  CHECK(run("cross-validate --regime deg4h4 --trials 10 --n 10 --r 6 --seed 1") == 0);
  CHECK(run("cross-validate --regime deg3 --trials 0") == 0);
  CHECK(run("cross-validate --regime deg3 --trials 2 --n 40") == 2);
}
