#include "gbp/hardness.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>

namespace gbp {

namespace {

using Pair = std::pair<int, int>;

Pair ordered(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

}  // namespace

void validate_vc(const VcInstance& vc, bool require_rotation) {
  const int n = vc.vertex_count;
  if (n <= 0) throw InputError(ErrorCode::kVertexId, "vertex cover source needs vertices");
  std::vector<std::vector<int>> adj(n);
  std::set<Pair> seen;
  for (auto [u, v] : vc.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError(ErrorCode::kVertexId, "source edge out of range");
    if (u == v) throw InputError(ErrorCode::kSelfLoop, "source graph has a self-loop");
    if (!seen.insert(ordered(u, v)).second) throw InputError(ErrorCode::kDuplicateEdge, "source graph has a parallel edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v = 0; v < n; ++v)
    if (adj[v].size() != 3) throw InputError(ErrorCode::kParse, "source graph is not cubic");
  std::vector<char> reached(n, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!reached[y]) {
        reached[y] = 1;
        ++count;
        stack.push_back(y);
      }
  }
  if (count != n) throw InputError(ErrorCode::kParse, "source graph is not connected");
  if (!vc.rotation) {
    if (require_rotation) throw InputError(ErrorCode::kParse, "a rotation system is required");
    return;
  }
  const auto& rot = *vc.rotation;
  if (static_cast<int>(rot.size()) != n) throw InputError(ErrorCode::kParse, "rotation must list every vertex");
  for (int v = 0; v < n; ++v) {
    std::vector<int> a = rot[v], b = adj[v];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InputError(ErrorCode::kParse, "rotation of a vertex must list its neighbors");
  }
  // Face tracing: a rotation system is planar iff n - m + f = 2.
  std::set<Pair> used;
  int faces = 0;
  for (int u = 0; u < n; ++u)
    for (int v : rot[u]) {
      if (used.count({u, v})) continue;
      ++faces;
      int a = u, b = v;
      while (!used.count({a, b})) {
        used.insert({a, b});
        const auto& rb = rot[b];
        const auto pos = std::find(rb.begin(), rb.end(), a) - rb.begin();
        const int c = rb[(pos + 1) % rb.size()];
        a = b;
        b = c;
      }
    }
  if (n - static_cast<int>(vc.edges.size()) + faces != 2)
    throw InputError(ErrorCode::kEmbeddingCrossing, "rotation system is not planar");
}

DockResult dock(const SimpleGraph& g, const SimpleGraph& h, Pair d, Pair d2) {
  auto has = [](const SimpleGraph& x, Pair e) {
    return std::any_of(x.edges.begin(), x.edges.end(),
                       [&](Pair f) { return ordered(f.first, f.second) == ordered(e.first, e.second); });
  };
  if (!has(g, d) || !has(h, d2)) throw InputError(ErrorCode::kEdgeId, "docking pairs must be edges");
  DockResult r;
  r.first_map.resize(g.vertex_count);
  std::iota(r.first_map.begin(), r.first_map.end(), 0);
  r.second_map.assign(h.vertex_count, -1);
  int next = g.vertex_count;
  for (int v = 0; v < h.vertex_count; ++v) {
    if (v == d2.first) r.second_map[v] = d.first;
    else if (v == d2.second) r.second_map[v] = d.second;
    else r.second_map[v] = next++;
  }
  r.graph.vertex_count = next;
  std::set<Pair> edges;
  for (auto [a, b] : g.edges) edges.insert(ordered(a, b));
  for (auto [a, b] : h.edges) edges.insert(ordered(r.second_map[a], r.second_map[b]));
  r.graph.edges.assign(edges.begin(), edges.end());
  return r;
}

namespace {

// Incrementally assembles G' from gadget copies. Local labels of an edge
// gadget that are identified with vertex gadget vertices map onto them.
class Assembler {
 public:
  int add_vertex() { return count_++; }
  void add_edge(int a, int b) { edges_.insert(ordered(a, b)); }
  int vertex_count() const { return count_; }
  const std::set<Pair>& edges() const { return edges_; }

 private:
  int count_ = 0;
  std::set<Pair> edges_;
};

std::vector<std::vector<int>> incident_edges(const VcInstance& vc) {
  std::vector<std::vector<int>> inc(vc.vertex_count);
  for (int e = 0; e < static_cast<int>(vc.edges.size()); ++e) {
    inc[vc.edges[e].first].push_back(e);
    inc[vc.edges[e].second].push_back(e);
  }
  return inc;
}

int other(const VcInstance& vc, int e, int u) { return vc.edges[e].first == u ? vc.edges[e].second : vc.edges[e].first; }

EdgeId id_of(const Instance& inst, int a, int b) {
  const auto id = find_edge(inst, a, b);
  if (!id) throw std::logic_error("gadget edge missing from the assembled graph");
  return *id;
}

std::vector<EdgeId> ids_of(const Instance& inst, const std::vector<int>& labels, const std::vector<Pair>& group) {
  std::vector<EdgeId> out;
  for (auto [a, b] : group) out.push_back(id_of(inst, labels[a - 1], labels[b - 1]));
  std::sort(out.begin(), out.end());
  return out;
}

// Triangles of a gadget, as global vertex triples.
std::vector<std::vector<VertexId>> gadget_triangles(const std::vector<int>& labels, const std::vector<Pair>& edges) {
  std::set<Pair> es;
  for (auto [a, b] : edges) es.insert(ordered(a, b));
  std::vector<std::vector<VertexId>> out;
  const int k = static_cast<int>(labels.size());
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      for (int c = b + 1; c <= k; ++c)
        if (es.count({a, b}) && es.count({b, c}) && es.count({a, c}))
          out.push_back({labels[a - 1], labels[b - 1], labels[c - 1]});
  return out;
}

struct EdgeGadgetSpec {
  std::vector<Pair> star, side[2];  // side[s] is the group covering the endpoint docked at dock[s]
  Pair dock[2];
};

struct VertexGadgetSpec {
  int size;
  std::vector<Pair> star, top, bottom;
  Pair dock[3];
};

const VertexGadgetSpec kVertex1{5, {{1, 4}, {2, 5}, {3, 4}}, {{1, 2}, {2, 3}, {4, 5}}, {{1, 5}, {3, 5}},
                                {{2, 1}, {2, 3}, {5, 4}}};
const VertexGadgetSpec kVertex2{6, {{2, 6}, {4, 6}}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}, {{1, 6}, {3, 6}, {5, 6}},
                                {{2, 1}, {2, 3}, {4, 5}}};
// Edge gadget of the first construction: side 0 docks (a2, a1), side 1 docks (a5, a4).
const EdgeGadgetSpec kEdge1{{{1, 4}, {2, 3}, {3, 5}}, {{{1, 2}, {3, 4}}, {{1, 3}, {4, 5}}}, {{2, 1}, {5, 4}}};
// Edge gadgets of the second construction: side 0 docks at the (a6, a7) end, side 1 at (a2, a1).
const EdgeGadgetSpec kEdge2Default{{{1, 4}, {4, 6}, {2, 3}, {3, 5}, {5, 7}},
                                   {{{1, 3}, {4, 5}, {6, 7}}, {{1, 2}, {3, 4}, {4, 7}}},
                                   {{6, 7}, {2, 1}}};
const EdgeGadgetSpec kEdge2Anti{{{1, 4}, {4, 6}, {2, 3}, {3, 5}, {5, 7}},
                                {{{1, 3}, {4, 5}, {6, 7}}, {{1, 2}, {3, 4}, {5, 6}}},
                                {{7, 6}, {2, 1}}};

std::vector<Pair> all_edges(const EdgeGadgetSpec& s) {
  std::vector<Pair> out = s.star;
  out.insert(out.end(), s.side[0].begin(), s.side[0].end());
  out.insert(out.end(), s.side[1].begin(), s.side[1].end());
  return out;
}

std::vector<Pair> all_edges(const VertexGadgetSpec& s) {
  std::vector<Pair> out = s.star;
  out.insert(out.end(), s.top.begin(), s.top.end());
  out.insert(out.end(), s.bottom.begin(), s.bottom.end());
  return out;
}

// For source edge e: which endpoint docks at side s and with which vertex
// docking pair index (1-based).
struct Attachment {
  int vertex[2];
  int pair_index[2];
  const EdgeGadgetSpec* spec;
  bool anti;
};

Reduction assemble(const VcInstance& vc, Construction construction, const VertexGadgetSpec& vspec,
                   const std::vector<Attachment>& attach, int offset, bool size_two_vertex_habitats) {
  Assembler as;
  Reduction red;
  GadgetMap& gm = red.map;
  gm.construction = construction;
  gm.source_vertices = vc.vertex_count;
  gm.source_edges = vc.edges;
  gm.target_offset = offset;
  for (int u = 0; u < vc.vertex_count; ++u) {
    std::vector<int> labels;
    for (int i = 0; i < vspec.size; ++i) labels.push_back(as.add_vertex());
    for (auto [a, b] : all_edges(vspec)) as.add_edge(labels[a - 1], labels[b - 1]);
    gm.vertex_gadget.push_back(labels);
  }
  std::vector<std::set<int>> used_pairs(vc.vertex_count);
  for (int e = 0; e < static_cast<int>(vc.edges.size()); ++e) {
    const Attachment& at = attach[e];
    const EdgeGadgetSpec& spec = *at.spec;
    int gadget_size = 0;
    for (auto [a, b] : all_edges(spec)) gadget_size = std::max({gadget_size, a, b});
    std::vector<int> labels(gadget_size, -1);
    for (int s = 0; s < 2; ++s) {
      const int u = at.vertex[s];
      const int i = at.pair_index[s];
      if (!used_pairs[u].insert(i).second) throw std::logic_error("docking pair used twice");
      const Pair vd = vspec.dock[i - 1];
      labels[spec.dock[s].first - 1] = gm.vertex_gadget[u][vd.first - 1];
      labels[spec.dock[s].second - 1] = gm.vertex_gadget[u][vd.second - 1];
      gm.docking_log.push_back({u, i, e, s});
    }
    for (int& l : labels)
      if (l < 0) l = as.add_vertex();
    for (auto [a, b] : all_edges(spec)) as.add_edge(labels[a - 1], labels[b - 1]);
    gm.edge_gadget.push_back(labels);
    gm.anti_crossing.push_back(at.anti);
  }

  std::vector<Edge> edges;
  for (auto [a, b] : as.edges()) edges.push_back({a, b, 1, false});
  Instance inst{as.vertex_count(), std::move(edges), {}, std::nullopt, std::nullopt};
  canonicalize(inst);

  for (int u = 0; u < vc.vertex_count; ++u) {
    const auto& labels = gm.vertex_gadget[u];
    gm.vertex_star.push_back(ids_of(inst, labels, vspec.star));
    gm.top.push_back(ids_of(inst, labels, vspec.top));
    gm.bottom.push_back(ids_of(inst, labels, vspec.bottom));
    for (EdgeId id : gm.vertex_star.back()) inst.edges[id].forced = true;
    if (size_two_vertex_habitats) {
      for (auto [a, b] : vspec.star) inst.habitats.push_back({labels[a - 1], labels[b - 1]});
      for (auto& t : gadget_triangles(labels, all_edges(vspec))) inst.habitats.push_back(t);
    } else {
      inst.habitats.push_back({labels[0], labels[1], labels[2], labels[5]});
      inst.habitats.push_back({labels[2], labels[3], labels[4], labels[5]});
    }
  }
  for (int e = 0; e < static_cast<int>(vc.edges.size()); ++e) {
    const auto& labels = gm.edge_gadget[e];
    const EdgeGadgetSpec& spec = *attach[e].spec;
    gm.edge_star.push_back(ids_of(inst, labels, spec.star));
    for (EdgeId id : gm.edge_star.back()) inst.edges[id].forced = true;
    gm.endpoint_vertex.push_back({attach[e].vertex[0], attach[e].vertex[1]});
    gm.endpoint_group.push_back({ids_of(inst, labels, spec.side[0]), ids_of(inst, labels, spec.side[1])});
    gm.docking_edges.push_back(ids_of(inst, labels, {spec.dock[0], spec.dock[1]}));
    for (auto [a, b] : spec.star) inst.habitats.push_back({labels[a - 1], labels[b - 1]});
    for (auto& t : gadget_triangles(labels, all_edges(spec))) inst.habitats.push_back(t);
  }
  canonicalize(inst);
  red.instance = std::move(inst);
  return red;
}

}  // namespace

Reduction construct1(const VcInstance& vc) {
  validate_vc(vc, false);
  const auto inc = incident_edges(vc);
  std::vector<Attachment> attach(vc.edges.size());
  for (int e = 0; e < static_cast<int>(vc.edges.size()); ++e) {
    const auto [a, b] = ordered(vc.edges[e].first, vc.edges[e].second);
    attach[e].vertex[0] = a;
    attach[e].vertex[1] = b;
    attach[e].spec = &kEdge1;
    attach[e].anti = false;
  }
  // Edge e_i = {u, v_i} with v_1 < v_2 < v_3 docks at the i-th pair of u.
  for (int u = 0; u < vc.vertex_count; ++u) {
    std::vector<int> es = inc[u];
    std::sort(es.begin(), es.end(), [&](int x, int y) { return other(vc, x, u) < other(vc, y, u); });
    for (int i = 0; i < 3; ++i) {
      const int e = es[i];
      attach[e].pair_index[attach[e].vertex[0] == u ? 0 : 1] = i + 1;
    }
  }
  const int n = vc.vertex_count;
  const int m = static_cast<int>(vc.edges.size());
  Reduction red = assemble(vc, Construction::kOne, kVertex1, attach, 5 * n + 4 * m, true);
  validate(red.instance);
  return red;
}

Reduction construct2(const VcInstance& vc) {
  validate_vc(vc, true);
  const auto& rot = *vc.rotation;
  auto pair_index = [&](int u, int v) {
    return static_cast<int>(std::find(rot[u].begin(), rot[u].end(), v) - rot[u].begin()) + 1;
  };
  std::vector<Attachment> attach(vc.edges.size());
  for (int e = 0; e < static_cast<int>(vc.edges.size()); ++e) {
    auto [u, v] = ordered(vc.edges[e].first, vc.edges[e].second);
    const int i = pair_index(u, v);
    const int j = pair_index(v, u);
    Attachment& at = attach[e];
    at.anti = (i == 1) != (j == 1);
    at.spec = at.anti ? &kEdge2Anti : &kEdge2Default;
    // The endpoint whose pair is d^1 sits at the (a6, a7) end of an
    // anti-crossing gadget; otherwise the smaller endpoint does.
    if (at.anti && j == 1) std::swap(u, v);
    at.vertex[0] = u;
    at.vertex[1] = v;
    at.pair_index[0] = pair_index(u, v);
    at.pair_index[1] = pair_index(v, u);
  }
  const int n = vc.vertex_count;
  const int m = static_cast<int>(vc.edges.size());
  Reduction red = assemble(vc, Construction::kTwo, kVertex2, attach, 5 * n + 7 * m, false);
  std::vector<Pair> edges;
  for (const Edge& e : red.instance.edges) edges.emplace_back(e.u, e.v);
  auto drawing = planar_drawing(red.instance.vertex_count, edges);
  if (!drawing) throw std::logic_error("assembled gadget graph is not planar");
  red.instance.embedding = std::move(*drawing);
  validate(red.instance);
  return red;
}

std::vector<EdgeId> map_vc_to_gbp(const GadgetMap& map, const std::vector<int>& cover) {
  std::vector<char> in(map.source_vertices, 0);
  for (int v : cover) {
    if (v < 0 || v >= map.source_vertices) throw InputError(ErrorCode::kVertexId, "cover vertex out of range");
    in[v] = 1;
  }
  for (auto [u, v] : map.source_edges)
    if (!in[u] && !in[v]) throw InputError(ErrorCode::kParse, "vertex set is not a vertex cover");
  std::vector<EdgeId> f;
  auto add = [&f](const std::vector<EdgeId>& g) { f.insert(f.end(), g.begin(), g.end()); };
  for (int u = 0; u < map.source_vertices; ++u) {
    add(map.vertex_star[u]);
    add(in[u] ? map.top[u] : map.bottom[u]);
  }
  for (std::size_t e = 0; e < map.source_edges.size(); ++e) {
    add(map.edge_star[e]);
    // Covering function: the smaller covered endpoint.
    const auto [a, b] = map.endpoint_vertex[e];
    int side;
    if (in[a] && in[b]) side = a < b ? 0 : 1;
    else side = in[a] ? 0 : 1;
    add(map.endpoint_group[e][side]);
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

std::vector<int> map_gbp_to_vc(const Instance& instance, const GadgetMap& map, std::span<const EdgeId> solution) {
  const Solution verdict = is_solution(instance, solution);
  if (!verdict.feasible) throw InputError(ErrorCode::kParse, "edge set is not a feasible solution");
  std::vector<char> f(instance.edges.size(), 0);
  for (EdgeId id : solution) f[id] = 1;
  std::vector<char> in(map.source_vertices, 0);
  for (int u = 0; u < map.source_vertices; ++u) {
    if (map.construction == Construction::kOne) {
      // F_u counts the unforced gadget edges in F; three or more means top.
      int count = 0;
      for (EdgeId id : map.top[u]) count += f[id];
      for (EdgeId id : map.bottom[u]) count += f[id];
      in[u] = count >= 3;
    } else {
      in[u] = std::any_of(map.top[u].begin(), map.top[u].end(), [&](EdgeId id) { return f[id]; });
    }
  }
  for (auto [u, v] : map.source_edges)
    if (!in[u] && !in[v]) in[std::min(u, v)] = 1;
  std::vector<int> cover;
  for (int u = 0; u < map.source_vertices; ++u)
    if (in[u]) cover.push_back(u);
  return cover;
}

std::vector<int> solve_vc_exact(const VcInstance& vc) {
  validate_vc(vc, false);
  const int n = vc.vertex_count;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : vc.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> removed(n, 0), chosen(n, 0), best_set;
  int best = n + 1;
  std::function<void(int)> rec = [&](int size) {
    if (size >= best) return;
    int pick = -1, pick_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (removed[v]) continue;
      int d = 0;
      for (int w : adj[v]) d += !removed[w];
      if (d > pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    if (pick < 0) {
      best = size;
      best_set = chosen;
      return;
    }
    // Either the vertex is in the cover, or all its remaining neighbors are.
    removed[pick] = chosen[pick] = 1;
    rec(size + 1);
    chosen[pick] = 0;
    std::vector<int> taken;
    for (int w : adj[pick])
      if (!removed[w]) {
        removed[w] = chosen[w] = 1;
        taken.push_back(w);
      }
    rec(size + static_cast<int>(taken.size()));
    for (int w : taken) removed[w] = chosen[w] = 0;
    removed[pick] = 0;
  };
  rec(0);
  std::vector<int> cover;
  for (int v = 0; v < n; ++v)
    if (best_set[v]) cover.push_back(v);
  return cover;
}

std::optional<std::vector<Point>> planar_drawing(int vertex_count, const std::vector<Pair>& edge_list) {
  using namespace boost;
  using Graph = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>, property<edge_index_t, int>>;
  using EdgeDesc = graph_traits<Graph>::edge_descriptor;
  using Embedding = std::vector<std::vector<EdgeDesc>>;
  if (vertex_count < 3) {
    std::vector<Point> pts;
    for (int v = 0; v < vertex_count; ++v) pts.push_back({v, 0});
    return pts;
  }
  Graph g(vertex_count);
  for (auto [a, b] : edge_list) add_edge(a, b, g);
  auto reindex = [&g] {
    int i = 0;
    for (auto [it, end] = edges(g); it != end; ++it) put(edge_index, g, *it, i++);
  };
  Embedding embedding(vertex_count);
  auto embed = [&] {
    reindex();
    for (auto& list : embedding) list.clear();
    return boyer_myrvold_planarity_test(boyer_myrvold_params::graph = g,
                                        boyer_myrvold_params::embedding = make_iterator_property_map(
                                            embedding.begin(), get(vertex_index, g)));
  };
  auto emap = [&] { return make_iterator_property_map(embedding.begin(), get(vertex_index, g)); };
  if (!embed()) return std::nullopt;
  make_connected(g);
  embed();
  make_biconnected_planar(g, emap());
  embed();
  make_maximal_planar(g, emap());
  embed();
  std::vector<graph_traits<Graph>::vertex_descriptor> ordering;
  planar_canonical_ordering(g, emap(), std::back_inserter(ordering));
  struct Coord {
    std::size_t x;
    std::size_t y;
  };
  std::vector<Coord> coords(vertex_count);
  auto drawing = make_iterator_property_map(coords.begin(), get(vertex_index, g));
  chrobak_payne_straight_line_drawing(g, emap(), ordering.begin(), ordering.end(), drawing);
  std::vector<Point> pts;
  for (const Coord& c : coords) pts.push_back({static_cast<std::int64_t>(c.x), static_cast<std::int64_t>(c.y)});
  return pts;
}

std::vector<VcInstance> cubic_planar_fixtures() {
  auto make = [](int n, std::vector<Pair> edges, std::vector<std::vector<int>> rot) {
    return VcInstance{n, std::move(edges), std::move(rot), std::nullopt};
  };
  return {
      make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {{1, 3, 2}, {0, 2, 3}, {1, 0, 3}, {2, 0, 1}}),
      make(6, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {3, 5}},
           {{1, 5, 4}, {0, 4, 2}, {1, 3, 5}, {2, 4, 5}, {3, 1, 0}, {3, 0, 2}}),
      make(8, {{0, 1}, {0, 6}, {0, 7}, {1, 3}, {1, 7}, {2, 4}, {2, 5}, {2, 7}, {3, 4}, {3, 6}, {4, 5}, {5, 6}},
           {{1, 6, 7}, {0, 7, 3}, {7, 5, 4}, {4, 6, 1}, {2, 5, 3}, {6, 4, 2}, {3, 5, 0}, {1, 0, 2}}),
      make(8, {{0, 1}, {0, 6}, {0, 7}, {1, 6}, {1, 7}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 5}, {4, 7}},
           {{1, 6, 7}, {0, 7, 6}, {4, 3, 5}, {2, 6, 5}, {7, 2, 5}, {3, 4, 2}, {3, 0, 1}, {1, 0, 4}}),
      make(8, {{0, 1}, {0, 4}, {0, 6}, {1, 3}, {1, 5}, {2, 3}, {2, 5}, {2, 7}, {3, 4}, {4, 7}, {5, 6}, {6, 7}},
           {{1, 6, 4}, {0, 3, 5}, {5, 3, 7}, {4, 2, 1}, {7, 3, 0}, {1, 2, 6}, {7, 0, 5}, {2, 4, 6}}),
  };
}

}  // namespace gbp
