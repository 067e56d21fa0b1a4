#include "gbp/zones3.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "gbp/preprocess.hpp"
#include "local_graph.hpp"

namespace gbp {

const char* to_string(ZoneKind kind) {
  switch (kind) {
    case ZoneKind::kTriangle: return "K3";
    case ZoneKind::kDiamond: return "K4-e";
    case ZoneKind::kLinkedTriangles: return "M(K3)-e";
  }
  return "?";
}

namespace {

using Triangle = std::array<VertexId, 3>;

void require_subcubic(const Instance& instance) {
  if (stats(instance).max_degree > 3) throw Inapplicable("zone decomposition needs maximum degree three");
}

// Habitats touching each vertex.
std::vector<std::vector<HabitatId>> vertex_habitats(const Instance& instance) {
  std::vector<std::vector<HabitatId>> out(instance.vertex_count);
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h)
    for (VertexId v : instance.habitats[h]) out[v].push_back(h);
  return out;
}

std::vector<EdgeId> optimize_zone_impl(const Instance& instance, const Adjacency& adjacency, const Zone& zone,
                                       const std::vector<std::vector<HabitatId>>& by_vertex) {
  std::vector<EdgeId> forced, free;
  for (EdgeId id : zone.edges) (instance.edges[id].forced ? forced : free).push_back(id);

  std::vector<HabitatId> relevant;
  for (VertexId v : zone.vertices) relevant.insert(relevant.end(), by_vertex[v].begin(), by_vertex[v].end());
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());

  // Per habitat: edges assumed present, and free zone edges by position.
  struct Local {
    int size;
    std::vector<std::pair<int, int>> fixed;
    std::vector<std::array<int, 3>> optional;  // a, b, position in `free`
  };
  std::vector<Local> locals;
  for (HabitatId h : relevant) {
    const auto& hv = instance.habitats[h];
    Local loc{static_cast<int>(hv.size()), {}, {}};
    for (EdgeId id : habitat_edges(adjacency, hv)) {
      const int a = detail::local_index(hv, instance.edges[id].u);
      const int b = detail::local_index(hv, instance.edges[id].v);
      const auto pos = std::find(free.begin(), free.end(), id);
      if (pos == free.end()) loc.fixed.emplace_back(a, b);
      else loc.optional.push_back({a, b, static_cast<int>(pos - free.begin())});
    }
    locals.push_back(std::move(loc));
  }

  const int k = static_cast<int>(free.size());
  std::optional<std::vector<EdgeId>> best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    std::vector<EdgeId> set = forced;
    for (int s = 0; s < k; ++s)
      if ((mask >> s) & 1U) set.push_back(free[s]);
    std::sort(set.begin(), set.end());
    if (best && !preferred(instance, set, *best)) continue;
    bool ok = true;
    for (const Local& loc : locals) {
      detail::LocalGraph g(loc.size);
      for (auto [a, b] : loc.fixed) g.add_edge(a, b);
      for (const auto& o : loc.optional)
        if ((mask >> o[2]) & 1U) g.add_edge(o[0], o[1]);
      if (!g.diameter_at_most_two()) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::move(set);
  }
  if (!best) throw std::logic_error("zone without a feasible edge subset");
  return *best;
}

}  // namespace

std::vector<Zone> find_zones(const Instance& instance) {
  require_subcubic(instance);
  const Adjacency adj(instance);
  const int n = instance.vertex_count;

  std::vector<Triangle> triangles;
  std::vector<std::vector<int>> at_vertex(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto arcs = adj.arcs(v);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        const VertexId a = arcs[i].to, b = arcs[j].to;
        if (a < v || b < v || !adj.edge_between(a, b)) continue;
        Triangle t{v, a, b};
        std::sort(t.begin(), t.end());
        for (VertexId x : t) at_vertex[x].push_back(static_cast<int>(triangles.size()));
        triangles.push_back(t);
      }
  }
  auto edge_of = [&](VertexId a, VertexId b) { return *adj.edge_between(a, b); };
  auto triangle_edges = [&](const Triangle& t) {
    return std::array<EdgeId, 3>{edge_of(t[0], t[1]), edge_of(t[0], t[2]), edge_of(t[1], t[2])};
  };
  std::vector<int> per_edge(instance.edges.size(), 0);
  for (const Triangle& t : triangles)
    for (EdgeId e : triangle_edges(t)) ++per_edge[e];

  std::vector<char> assigned(triangles.size(), 0);
  std::vector<Zone> zones;
  auto in_triangle = [](const Triangle& t, VertexId v) { return t[0] == v || t[1] == v || t[2] == v; };
  auto finish = [&](Zone z) {
    std::sort(z.vertices.begin(), z.vertices.end());
    z.vertices.erase(std::unique(z.vertices.begin(), z.vertices.end()), z.vertices.end());
    std::sort(z.edges.begin(), z.edges.end());
    z.edges.erase(std::unique(z.edges.begin(), z.edges.end()), z.edges.end());
    zones.push_back(std::move(z));
  };

  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto te = triangle_edges(triangles[t]);
    if (per_edge[te[0]] > 1 || per_edge[te[1]] > 1 || per_edge[te[2]] > 1) {
      // Two triangles on one edge: K4 - e, or a full K4.
      const int shared = per_edge[te[0]] > 1 ? 0 : per_edge[te[1]] > 1 ? 1 : 2;
      if (per_edge[te[(shared + 1) % 3]] > 1 || per_edge[te[(shared + 2) % 3]] > 1)
        throw Inapplicable("graph contains an isolated K4");
    }
  }

  // Linked triangles first, so the remaining triangles cannot be part of one.
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    if (assigned[t]) continue;
    const Triangle& tri = triangles[t];
    const auto te = triangle_edges(tri);
    if (per_edge[te[0]] > 1 || per_edge[te[1]] > 1 || per_edge[te[2]] > 1) continue;
    std::map<int, std::vector<EdgeId>> links;
    for (VertexId x : tri)
      for (const Arc& arc : adj.arcs(x)) {
        if (in_triangle(tri, arc.to)) continue;
        for (int t2 : at_vertex[arc.to]) links[t2].push_back(arc.edge);
      }
    for (const auto& [t2, edges] : links) {
      if (assigned[t2] || edges.size() < 2) continue;
      const Triangle& other = triangles[t2];
      if (std::any_of(other.begin(), other.end(), [&](VertexId v) { return in_triangle(tri, v); })) continue;
      if (edges.size() > 2) throw Inapplicable("graph contains an isolated prism");
      Zone z{ZoneKind::kLinkedTriangles, {}, {}};
      for (const Triangle* part : {&tri, &other}) {
        z.vertices.insert(z.vertices.end(), part->begin(), part->end());
        for (EdgeId e : triangle_edges(*part)) z.edges.push_back(e);
      }
      z.edges.insert(z.edges.end(), edges.begin(), edges.end());
      assigned[t] = assigned[t2] = 1;
      finish(std::move(z));
      break;
    }
  }

  for (EdgeId e = 0; e < static_cast<EdgeId>(instance.edges.size()); ++e) {
    if (per_edge[e] != 2) continue;
    Zone z{ZoneKind::kDiamond, {}, {}};
    for (int t : at_vertex[instance.edges[e].u]) {
      if (!in_triangle(triangles[t], instance.edges[e].v)) continue;
      assigned[t] = 1;
      z.vertices.insert(z.vertices.end(), triangles[t].begin(), triangles[t].end());
      for (EdgeId f : triangle_edges(triangles[t])) z.edges.push_back(f);
    }
    finish(std::move(z));
  }

  for (std::size_t t = 0; t < triangles.size(); ++t) {
    if (assigned[t]) continue;
    Zone z{ZoneKind::kTriangle, {triangles[t].begin(), triangles[t].end()}, {}};
    for (EdgeId f : triangle_edges(triangles[t])) z.edges.push_back(f);
    finish(std::move(z));
  }
  return zones;
}

std::vector<EdgeId> optimize_zone(const Instance& instance, const Zone& zone) {
  return optimize_zone_impl(instance, Adjacency(instance), zone, vertex_habitats(instance));
}

Deg3Result solve_deg3_traced(const Instance& instance, bool small_components) {
  require_subcubic(instance);
  Deg3Result result;
  const Preprocessed pre = preprocess_all(instance, small_components);
  if (pre.ledger.verdict == Verdict::kNoInstance) return result;
  result.reduced = pre.instance;
  const Instance& red = result.reduced;
  result.zones = find_zones(red);

  std::vector<char> owned(red.edges.size(), 0);
  for (const Zone& z : result.zones)
    for (EdgeId e : z.edges) {
      if (owned[e]) throw std::logic_error("zones share an edge");
      owned[e] = 1;
    }

  const Adjacency adjacency(red);
  const auto by_vertex = vertex_habitats(red);
  std::vector<char> chosen(red.edges.size(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(red.edges.size()); ++e) chosen[e] = red.edges[e].forced;
  for (const Zone& z : result.zones)
    for (EdgeId e : optimize_zone_impl(red, adjacency, z, by_vertex)) chosen[e] = 1;
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(red.edges.size()); ++e)
    if (chosen[e]) edges.push_back(e);
  if (!is_solution(red, edges).violated_habitats.empty())
    throw std::logic_error("zone solutions do not combine to a feasible set");
  edges = lift(pre.ledger, edges);
  result.optimum = Optimum{edges, cost_of(instance, edges)};
  return result;
}

std::optional<Optimum> solve_deg3(const Instance& instance) { return solve_deg3_traced(instance).optimum; }

}  // namespace gbp
