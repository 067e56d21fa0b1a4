#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gbp/exact.hpp"
#include "gbp/generators.hpp"
#include "gbp/zones3.hpp"
#include "oracles.hpp"

using namespace gbp;

namespace {

Instance unit(int n, std::vector<std::pair<int, int>> pairs, std::vector<std::vector<VertexId>> habitats = {}) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1, false});
  return make_instance(n, std::move(edges), std::move(habitats));
}

// Triangles of the graph as sorted vertex triples, found by brute force.
std::set<std::vector<int>> triangles(const Instance& inst) {
  std::set<std::vector<int>> out;
  const int n = inst.vertex_count;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (find_edge(inst, a, b) && find_edge(inst, b, c) && find_edge(inst, a, c)) out.insert({a, b, c});
  return out;
}

}  // namespace

TEST_CASE("zone kinds") {
  // Triangle 0-1-2, diamond 3-4-5-6 (shared edge 4-5), linked triangles 7-8-9 / 10-11-12.
  const Instance inst = unit(13, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6},
                                  {7, 8}, {7, 9}, {8, 9}, {10, 11}, {10, 12}, {11, 12}, {7, 10}, {8, 11}, {6, 9}});
  const auto zones = find_zones(inst);
  REQUIRE(zones.size() == 3);
  std::multiset<std::pair<ZoneKind, std::size_t>> shape;
  for (const Zone& z : zones) shape.insert({z.kind, z.edges.size()});
  CHECK(shape == std::multiset<std::pair<ZoneKind, std::size_t>>{
                     {ZoneKind::kTriangle, 3}, {ZoneKind::kDiamond, 5}, {ZoneKind::kLinkedTriangles, 8}});
  CHECK(std::string(to_string(ZoneKind::kDiamond)) != to_string(ZoneKind::kTriangle));
}

TEST_CASE("degree above three and isolated K4 are rejected") {
  const Instance star = unit(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK_THROWS_AS(find_zones(star), Inapplicable);
  CHECK_THROWS_AS(solve_deg3(star), Inapplicable);
  const Instance k4 = unit(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK_THROWS_AS(find_zones(k4), Inapplicable);
}

TEST_CASE("zone optimum on a lone triangle habitat picks its two cheapest edges") {
  const Instance inst = make_instance(3, {{0, 1, 5, false}, {0, 2, 1, false}, {1, 2, 2, false}}, {{0, 1, 2}});
  const auto zones = find_zones(inst);
  REQUIRE(zones.size() == 1);
  CHECK(optimize_zone(inst, zones[0]) == std::vector<EdgeId>{1, 2});
}

TEST_CASE("zones partition the triangles of reduced instances without sharing edges") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GeneratorConfig c;
    c.regime = Regime::kDeg3;
    c.n = 14;
    c.r = 8;
    c.seed = seed;
    Deg3Result res;
    try {
      res = solve_deg3_traced(generate(c), false);
    } catch (const Inapplicable&) {
      continue;
    }
    std::set<EdgeId> used;
    for (const Zone& z : res.zones)
      for (EdgeId e : z.edges) CHECK(used.insert(e).second);
    for (const auto& t : triangles(res.reduced)) {
      int owners = 0;
      for (const Zone& z : res.zones) {
        std::vector<VertexId> vs = z.vertices;
        std::sort(vs.begin(), vs.end());
        owners += std::includes(vs.begin(), vs.end(), t.begin(), t.end());
      }
      CHECK(owners == 1);
    }
    checked += !res.zones.empty();
  }
  CHECK(checked > 50);
}

TEST_CASE("degree-three solver equals the exact solver with and without the small-component rule") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GeneratorConfig c;
    c.regime = Regime::kDeg3;
    c.n = 12;
    c.r = 7;
    c.seed = seed;
    const Instance inst = generate(c);
    const auto expect = solve_exact(inst);
    const auto got = solve_deg3(inst);
    REQUIRE(got.has_value() == expect.has_value());
    if (!got) continue;
    CHECK(got->cost == expect->cost);
    CHECK(oracle::feasible(inst, got->edges));
    try {
      const auto variant = solve_deg3_traced(inst, false);
      CHECK(variant.optimum->cost == expect->cost);
    } catch (const Inapplicable&) {
    }
  }
}
