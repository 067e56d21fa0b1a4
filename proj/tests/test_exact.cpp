#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gbp/exact.hpp"
#include "gbp/generators.hpp"
#include "oracles.hpp"

using namespace gbp;

namespace {

Instance complete_graph(int n, std::vector<std::vector<VertexId>> habitats) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1, false});
  return make_instance(n, std::move(edges), std::move(habitats));
}

}  // namespace

TEST_CASE("triangle family has the full set and the three two-edge paths") {
  const Instance tri = complete_graph(3, {{0, 1, 2}});
  const FeasibleFamily f = enumerate_feasible_sets(tri, 0);
  CHECK(f.habitat_edges == std::vector<EdgeId>{0, 1, 2});
  REQUIRE(f.sets.size() == 4);
  CHECK(std::count(f.sets.begin(), f.sets.end(), std::vector<EdgeId>{0, 1, 2}) == 1);
  CHECK(minimal_members(f.sets).size() == 3);
}

TEST_CASE("a star inside a K4 habitat is feasible") {
  const Instance k4 = complete_graph(4, {{0, 1, 2, 3}});
  const FeasibleFamily f = enumerate_feasible_sets(k4, 0);
  const std::vector<EdgeId> star{*find_edge(k4, 0, 1), *find_edge(k4, 0, 2), *find_edge(k4, 0, 3)};
  CHECK(std::count(f.sets.begin(), f.sets.end(), star) == 1);
}

TEST_CASE("two-vertex habitat family is its single edge") {
  const Instance inst = make_instance(2, {{0, 1, 3, false}}, {{0, 1}});
  const FeasibleFamily f = enumerate_feasible_sets(inst, 0);
  CHECK(f.sets == std::vector<std::vector<EdgeId>>{{0}});
}

TEST_CASE("family enumeration matches brute force and is upward closed") {
  for (unsigned seed = 1; seed <= 100; ++seed) {
    const Instance inst = oracle::random_instance(seed, 6, 0.7, 3, 5);
    for (HabitatId h = 0; h < HabitatId(inst.habitats.size()); ++h) {
      const FeasibleFamily f = enumerate_feasible_sets(inst, h);
      Instance single = inst;
      single.habitats = {inst.habitats[h]};
      const auto& he = f.habitat_edges;
      std::vector<std::vector<EdgeId>> expect;
      for (std::uint32_t mask = 0; mask < (1U << he.size()); ++mask) {
        std::vector<EdgeId> set;
        bool has_forced = true;
        for (std::size_t i = 0; i < he.size(); ++i) {
          if ((mask >> i) & 1U) set.push_back(he[i]);
          else if (inst.edges[he[i]].forced) has_forced = false;
        }
        // Forced edges outside the habitat do not matter for this habitat.
        std::vector<EdgeId> with_outside = set;
        for (EdgeId id = 0; id < EdgeId(inst.edges.size()); ++id)
          if (inst.edges[id].forced && !std::count(he.begin(), he.end(), id)) with_outside.push_back(id);
        if (has_forced && oracle::feasible(single, with_outside)) expect.push_back(set);
      }
      auto got = f.sets;
      std::sort(got.begin(), got.end());
      std::sort(expect.begin(), expect.end());
      CHECK(got == expect);
      for (const auto& s : f.sets)
        for (EdgeId extra : he) {
          if (std::count(s.begin(), s.end(), extra)) continue;
          auto bigger = s;
          bigger.push_back(extra);
          std::sort(bigger.begin(), bigger.end());
          CHECK(std::count(f.sets.begin(), f.sets.end(), bigger) == 1);
        }
    }
  }
}

TEST_CASE("enumeration refuses habitats above the edge guard") {
  const Instance k6 = complete_graph(6, {{0, 1, 2, 3, 4, 5}});
  CHECK_THROWS_AS(enumerate_feasible_sets(k6, 0), FamilyTooLarge);
  CHECK(enumerate_feasible_sets(k6, 0, 15).sets.size() > 0);
}

TEST_CASE("exact optimum equals exhaustive enumeration") {
  int feasible = 0;
  for (unsigned seed = 1; seed <= 300; ++seed) {
    const Instance inst = seed % 2 ? oracle::random_instance(seed, 8, 0.5, 4, 5)
                                   : oracle::habitat_dense_instance(seed, 9, 4, 5);
    if (inst.edges.size() > 18) continue;
    const auto expected = oracle::brute_force_opt(inst);
    const auto got = solve_exact(inst);
    REQUIRE(got.has_value() == expected.has_value());
    if (!got) continue;
    ++feasible;
    CHECK(got->cost == *expected);
    CHECK(cost_of(inst, got->edges) == got->cost);
    CHECK(oracle::feasible(inst, got->edges));
    std::vector<EdgeId> all(inst.edges.size());
    for (EdgeId id = 0; id < EdgeId(all.size()); ++id) all[id] = id;
    CHECK(solve_exact(inst, all) == got);
  }
  CHECK(feasible > 50);
}

TEST_CASE("disjoint unit triangles cost two edges each") {
  std::vector<Edge> edges;
  std::vector<std::vector<VertexId>> habitats;
  for (int t = 0; t < 5; ++t) {
    const int b = 3 * t;
    edges.insert(edges.end(), {{b, b + 1, 1, false}, {b, b + 2, 1, false}, {b + 1, b + 2, 1, false}});
    habitats.push_back({b, b + 1, b + 2});
  }
  const auto opt = solve_exact(make_instance(15, edges, habitats));
  REQUIRE(opt.has_value());
  CHECK(opt->cost == 10);
}

TEST_CASE("empty habitat list gives the empty solution") {
  const auto opt = solve_exact(make_instance(3, {{0, 1, 4, false}, {1, 2, 2, false}}, {}));
  REQUIRE(opt.has_value());
  CHECK(opt->cost == 0);
  CHECK(opt->edges.empty());
}

TEST_CASE("equal-cost optima break ties towards the smallest id list") {
  const auto opt = solve_exact(complete_graph(3, {{0, 1, 2}}));
  REQUIRE(opt.has_value());
  CHECK(opt->edges == std::vector<EdgeId>{0, 1});
}

TEST_CASE("restricting the edge set can make an instance infeasible") {
  const Instance tri = complete_graph(3, {{0, 1, 2}});
  CHECK_FALSE(solve_exact(tri, std::vector<EdgeId>{0}).has_value());
  const auto two = solve_exact(tri, std::vector<EdgeId>{1, 2});
  REQUIRE(two.has_value());
  CHECK(two->edges == std::vector<EdgeId>{1, 2});
}

TEST_CASE("nested triangle example fits its budget") {
  const Instance inst = nested_triangles_example();
  const auto opt = solve_exact(inst);
  REQUIRE(opt.has_value());
  CHECK(opt->cost == *oracle::brute_force_opt(inst));
  CHECK(opt->cost <= *inst.budget);
}
